#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace purcell {

// Error hierarchy. Everything thrown by the library derives from one of the
// two standard bases so callers can catch broadly.

class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// eps * mu == 0: the refractive index is undefined.
class SingularMediumError : public DomainError {
public:
  using DomainError::DomainError;
};

// A Fourier mode sits exactly on the dispersion pole k^2 = w^2 eps mu.
class SingularModeError : public DomainError {
public:
  using DomainError::DomainError;
};

// Medium and noise transforms only exist for quarter-turn duality angles.
class UnsupportedAngleError : public DomainError {
public:
  using DomainError::DomainError;
};

class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class PoleOnContourError : public NumericError {
public:
  using NumericError::NumericError;
};

// Non-fatal diagnostics (branch ambiguities, small-radius expansions used
// outside their comfortable range). The default handler writes to stderr.
using WarningHandler = std::function<void(std::string_view)>;

// Installs a new handler and returns the previous one. Passing an empty
// function silences warnings.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

// RAII capture of warnings, mostly for tests.
class ScopedWarningCapture {
public:
  ScopedWarningCapture();
  ~ScopedWarningCapture();
  ScopedWarningCapture(const ScopedWarningCapture &) = delete;
  ScopedWarningCapture &operator=(const ScopedWarningCapture &) = delete;

  const std::string &text() const { return m_text; }
  int count() const { return m_count; }

private:
  WarningHandler m_previous;
  std::string m_text;
  int m_count = 0;
};

} // namespace purcell
