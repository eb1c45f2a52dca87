#pragma once

#include <stdexcept>
#include <string>

namespace dqw {

// Walker support reached the edge of its lattice window.
class WindowError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Observable evaluation hit a state that cannot come from unitary evolution
// (negative density-matrix eigenvalue, non-finite amplitudes, ...).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    IoError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

  private:
    std::string path_;
};

}  // namespace dqw
