#pragma once

#include <stdexcept>
#include <string>

namespace shrinkvar {

// Thrown when a linear system is singular and no regularization is in effect.
class RankDeficiencyError : public std::runtime_error {
 public:
  explicit RankDeficiencyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an estimator needs more rows than the design provides.
class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when every MCMC chain diverges (non-finite density).
class SamplerError : public std::runtime_error {
 public:
  explicit SamplerError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown on unreadable/unwritable files and malformed data assets.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a metric is undefined for the requested subset (e.g. empty mask).
class UndefinedMetricError : public std::runtime_error {
 public:
  explicit UndefinedMetricError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace shrinkvar
