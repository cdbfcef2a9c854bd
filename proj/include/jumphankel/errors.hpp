#pragma once

#include <stdexcept>
#include <string>

namespace jumphankel {

/// Base of every numerical failure the library reports. name() is the stable
/// identifier the CLI prints verbatim (e.g. "IllConditioned").
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define JH_DEFINE_ERROR(Type)                                                        \
  class Type : public NumericalError {                                               \
   public:                                                                           \
    explicit Type(const std::string& what) : NumericalError(#Type, what) {}          \
  };

JH_DEFINE_ERROR(NonConvergence)
JH_DEFINE_ERROR(IllConditioned)
JH_DEFINE_ERROR(PoleAtJump)
JH_DEFINE_ERROR(DegenerateIteration)
JH_DEFINE_ERROR(StepCollision)
JH_DEFINE_ERROR(ZeroChannel)
JH_DEFINE_ERROR(NotNormalizable)
JH_DEFINE_ERROR(StepUnderflow)
JH_DEFINE_ERROR(EigFailure)

#undef JH_DEFINE_ERROR

/// Invalid weight/run configuration. field() names the offending entry.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace jumphankel
