#pragma once

#include <stdexcept>
#include <string>

namespace dockbot {

/// Non-finite or out-of-domain numeric input.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Degenerate robot geometry (e.g. a singular kinematic matrix).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A twist was passed in the wrong reference frame.
class FrameError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A docking step function was called while the machine is in another phase.
class PhaseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Modules cannot be composed (e.g. hubs not in contact).
class CompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Composite motion request not expressible in the selected motion mode.
class ModeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// NaN or Inf appeared in the simulated state.
class SimulationDiverged : public std::runtime_error {
 public:
  SimulationDiverged(double time, const std::string& what)
      : std::runtime_error("simulation diverged at t=" + std::to_string(time) + "s: " + what),
        time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Scenario file problem. `field` is a JSON pointer to the offending value.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace dockbot
