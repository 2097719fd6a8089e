#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace daz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed configuration or precondition violations.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  DimensionMismatch(std::string what, std::size_t expected, std::size_t got)
      : InvalidArgument(what + ": expected dimension " + std::to_string(expected) +
              ", got " + std::to_string(got)),
        expected_(expected),
        got_(got) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t got() const noexcept { return got_; }

 private:
  std::size_t expected_;
  std::size_t got_;
};

/// An iterative solver stopped before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(std::string what, double residual, std::size_t iterations)
      : Error(what + " (residual " + std::to_string(residual) + " after " +
              std::to_string(iterations) + " iterations)"),
        residual_(residual),
        iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

/// A Markov chain produced a non-finite coordinate.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t chain, std::uint64_t iteration, std::size_t level)
      : Error("chain " + std::to_string(chain) + " diverged at iteration " +
              std::to_string(iteration) + " (level " + std::to_string(level) +
              ")"),
        chain_(chain),
        iteration_(iteration),
        level_(level) {}

  std::size_t chain() const noexcept { return chain_; }
  std::uint64_t iteration() const noexcept { return iteration_; }
  std::size_t level() const noexcept { return level_; }

 private:
  std::size_t chain_;
  std::uint64_t iteration_;
  std::size_t level_;
};

}  // namespace daz
