#pragma once

#include <stdexcept>
#include <string>

namespace stylescope {

// Thrown when tensor/matrix shapes disagree; the message names the offending axis.
struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid build/run configuration (bad resolutions, malformed JSON, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument to an operation (counts out of range, unknown ids, ...).
struct ArgumentError : std::invalid_argument {
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// Non-finite or otherwise unusable data fed to a numeric routine.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A required artifact (bank, report, file) is missing.
struct PrerequisiteError : std::runtime_error {
  explicit PrerequisiteError(const std::string& what) : std::runtime_error(what) {}
};

// Artifacts produced from different generators/banks were mixed.
struct ProvenanceError : std::runtime_error {
  explicit ProvenanceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stylescope
