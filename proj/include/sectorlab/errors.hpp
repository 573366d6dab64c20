#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sectorlab {

using complexd = std::complex<double>;

inline std::string describe_point(complexd z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

// Evaluation left the validity domain (branch cut, wrong half plane, ...).
// Carries the offending point.
class domain_error : public std::runtime_error {
public:
  domain_error(const std::string& what, complexd where)
      : std::runtime_error(what + " at z=" + describe_point(where)), z_(where) {}
  complexd where() const { return z_; }

private:
  complexd z_;
};

// Picard iteration failed to contract within the iteration budget.
class convergence_error : public std::runtime_error {
public:
  convergence_error(const std::string& what, double last_contraction)
      : std::runtime_error(what + " (last contraction factor " +
                           std::to_string(last_contraction) +
                           "; try smaller epsilon or damping)"),
        contraction_(last_contraction) {}
  double last_contraction() const { return contraction_; }

private:
  double contraction_;
};

// Spectral tail decays too slowly for a trustworthy radial derivative;
// the numerical counterpart of the C^{1,beta} hypothesis failing.
class regularity_error : public std::runtime_error {
public:
  regularity_error(const std::string& what, double tail_fraction)
      : std::runtime_error(what + " (relative tail energy " +
                           std::to_string(tail_fraction) + ")"),
        tail_fraction_(tail_fraction) {}
  double tail_fraction() const { return tail_fraction_; }

private:
  double tail_fraction_;
};

class unsupported_operation : public std::logic_error {
public:
  explicit unsupported_operation(const std::string& what)
      : std::logic_error(what) {}
};

class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sectorlab
