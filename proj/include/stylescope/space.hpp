#pragma once

#include <string>

#include "stylescope/errors.hpp"

namespace stylescope {

// The latent spaces under study.
enum class Space { Z, W, WPlus, S };

inline const char* space_name(Space s) {
  switch (s) {
    case Space::Z: return "Z";
    case Space::W: return "W";
    case Space::WPlus: return "W+";
    default: return "S";
  }
}

inline Space space_from(const std::string& name) {
  if (name == "Z" || name == "z") return Space::Z;
  if (name == "W" || name == "w") return Space::W;
  if (name == "W+" || name == "w+" || name == "wplus") return Space::WPlus;
  if (name == "S" || name == "s") return Space::S;
  throw ArgumentError("unknown latent space: " + name);
}

}  // namespace stylescope
