#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <complex>
#include <vector>

#include "lehmer/errors.hpp"
#include "lehmer/int_poly.hpp"

namespace lehmer {

using ExtReal = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

struct ExtComplex {
  ExtReal re;
  ExtReal im;
};

struct PrecisionConfig {
  int working_bits = 128;      // first precision tier tried; 53 selects plain doubles
  double target_radius = 1e-30;
  int max_iterations = 200;    // per precision tier
};

/// Disk in the complex plane. The radius is rounded upwards to a double.
struct ComplexDisk {
  ExtReal center_re;
  ExtReal center_im;
  double radius = 0;

  std::complex<double> center() const {
    return {static_cast<double>(center_re), static_cast<double>(center_im)};
  }
  /// |center| as an extended real.
  ExtReal center_abs() const;
};

/// A disk certified to contain exactly `multiplicity` roots counted with
/// multiplicity. Disks of distinct clusters are disjoint.
struct RootCluster {
  ComplexDisk disk;
  int multiplicity = 1;
};

/// Raised when the highest precision tier still cannot certify the roots; carries
/// the best certified (but possibly too large or clustered) disks.
class RootPrecisionError : public PrecisionError {
 public:
  RootPrecisionError(const std::string& msg, std::vector<RootCluster> best)
      : PrecisionError(msg), best_(std::move(best)) {}
  const std::vector<RootCluster>& best() const noexcept { return best_; }

 private:
  std::vector<RootCluster> best_;
};

/// Certified isolation of every complex root (Aberth iteration, Weierstrass
/// inclusion disks, precision doubling). Coefficients lowest degree first.
/// Result is sorted by center (real part, then imaginary part).
std::vector<RootCluster> all_roots(const IntPoly& f, const PrecisionConfig& cfg = {});
std::vector<RootCluster> all_roots(const std::vector<std::complex<double>>& coeffs,
                                   const PrecisionConfig& cfg = {});
std::vector<RootCluster> all_roots(const std::vector<ExtComplex>& coeffs,
                                   const PrecisionConfig& cfg = {});

struct ModulusEnclosure {
  ExtReal lo = 0;
  ExtReal hi = 0;
};

/// Enclosure of the largest root modulus.
ModulusEnclosure max_modulus(const IntPoly& f, const PrecisionConfig& cfg = {});
ModulusEnclosure max_modulus(const std::vector<RootCluster>& roots);

}  // namespace lehmer
