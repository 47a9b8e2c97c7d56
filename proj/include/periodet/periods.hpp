#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "periodet/cycles.hpp"
#include "periodet/poly.hpp"
#include "periodet/sign.hpp"

namespace periodet {

struct Integral {
  cplx value;
  double error;
};

struct QuadOptions {
  /// Target error relative to the integral of |integrand| along the chain.
  double rel_tol = 1e-10;
  double abs_tol = 1e-15;
  int max_intervals = 50000;
  TrackOptions track;
};

/// Integrals of all n^2 forms x^l y^(m+1) dx over one chain, indexed by j - 1.
/// Adaptive Gauss-Kronrod (7/15) on the path parameter; the error of each
/// interval is |K15 - G7|. Results whose error exceeds the target carry it in
/// the returned error; callers decide whether that is fatal.
std::vector<Integral> integrate_chain(const PlaneCurve& f, int n, const LiftedChain& chain, const QuadOptions& opts = {});

/// One form over one cycle; accuracy-failure if the target is not reached.
Integral integrate_form(const BivarPoly& h, cplx t, int j, const LiftedChain& cycle, const QuadOptions& opts = {});

struct PeriodMatrix {
  int n = 0;
  cplx t;
  /// entries(j - 1, r - 1) = integral of omega_j over cycle r.
  Eigen::MatrixXcd entries;
  Eigen::MatrixXd errors;
  /// Some entry missed the quadrature target.
  bool partial = false;
  /// Ratio of extreme singular values.
  double condition = 0.0;

  cplx det() const { return entries.partialPivLu().determinant(); }
  /// First-order bound |det| * sum_jr |(P^-1)_rj| err_jr.
  double det_error() const;
};

/// All n^4 integrals. Cycles are processed on up to `threads` threads; each
/// column is computed independently, so the result does not depend on the
/// thread count.
PeriodMatrix period_matrix(const CycleBasis& basis, const QuadOptions& opts = {}, int threads = 1);

struct DetFit {
  std::vector<std::pair<cplx, cplx>> samples;  // (t, det)
  std::vector<cplx> rejected;                  // t values too close to a critical value
  /// Fit in u = (t - center) / radius, ascending.
  std::vector<cplx> coefficients_u;
  cplx center;
  double radius = 1.0;
  /// Same polynomial in t, ascending.
  std::vector<cplx> coefficients;
  std::vector<cplx> roots;
  cplx leading;
  /// max |fit(t_k) - det_k| / max |det_k|.
  double residual = 0.0;
  /// |leading u-coefficient| relative to the largest one.
  double leading_rel = 0.0;
  /// Largest determinant error estimate over the samples, relative to max |det|.
  double noise = 0.0;
};

/// Least-squares polynomial of the given degree through the samples.
/// invalid-parameter if there are fewer than degree + 1 samples.
DetFit fit_determinant(const std::vector<std::pair<cplx, cplx>>& samples, int degree);

struct SampleOptions {
  QuadOptions quad;
  DeformOptions deform;
  int threads = 1;
  /// Samples closer than this to a critical value are rejected.
  double critical_guard = 1e-3;
};

/// Transports the basis through t_list in order (straight chords), takes the
/// period determinant at each t and fits a polynomial of degree n^2.
DetFit det_samples(const BivarPoly& h, const CycleBasis& basis, const std::vector<cplx>& t_list,
                   const SampleOptions& opts = {});

/// circle: the fixed circle |t - center| = radius, suited to small
/// perturbations of Fermat. enclosing: center at the mean critical value and
/// radius 1.5 max |c - mean| + 0.2, so that the fit interpolates its roots
/// instead of extrapolating them; center and radius are then ignored.
enum class SampleLayout { Circle, Enclosing };

struct VerifyConfig {
  SampleOptions sampling;
  /// Samples on the circle |t - center| = radius; 0 means 2 (n^2 + 1).
  int samples = 0;
  SampleLayout layout = SampleLayout::Circle;
  cplx center = 1.0;
  double radius = 0.2;
  /// Angle of the first sample; off the real axis so that real polynomials
  /// do not force symmetric branch-point encounters during transport.
  double angle_offset = 0.1;
  double fit_tol = 1e-6;
  double root_tol = 1e-5;
  double ratio_tol = 1e-4;
};

struct RootMatch {
  cplx fitted;
  cplx critical;
  double distance;
  /// root_tol for a simple critical value; for an m-fold one the fitted roots
  /// only sit within about (noise max|det| / |leading|)^(1/m) of it.
  double allowed;
};

struct VerificationReport {
  int n = 0;
  std::string stage = "complete";  // where a failure happened
  std::string message;
  DetFit fit;
  bool polynomial_pass = false;
  std::vector<RootMatch> roots;
  double max_root_distance = 0.0;
  bool roots_pass = false;
  SignAmbiguous closed_form;
  cplx ratio;  // leading / C(H)
  int sign = 0;
  double ratio_error = 0.0;
  bool ratio_pass = false;
  bool pass = false;
  std::vector<cplx> critical_values;
  std::string basis_provenance;
  VerifyConfig config;
};

/// Periods-side versus closed-form side: polynomiality of det in t, its roots
/// against the critical values, its leading coefficient against C(H) up to sign.
/// Input errors (chart, genericity) propagate as exceptions; numerical
/// failures after the closed form is known are reported in `stage`.
VerificationReport verify(const BivarPoly& h, const VerifyConfig& config = {});

/// The Fermat basis deformed to h at t = 1 (Fermat itself if h is Fermat).
CycleBasis basis_for(const BivarPoly& h, const DeformOptions& opts = {});

/// Critical values with multiplicity; n^2 zeros for homogeneous h.
std::vector<cplx> critical_values(const BivarPoly& h);

}  // namespace periodet
