#include "restlab/region.hpp"

#include <cmath>
#include <stdexcept>

namespace restlab {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Valid: return "VALID";
    case Verdict::Fail: return "FAIL";
    case Verdict::Open: return "OPEN";
  }
  return "OPEN";
}

double compact_alpha(int N, double p) {
  if (N < 2) throw std::invalid_argument("compact_alpha: need N >= 2");
  const double p_end = 2.0 * (N + 1) / (N + 3);
  if (!(p >= 1.0)) throw std::invalid_argument("compact_alpha: p must be >= 1");
  if (p > p_end + 1e-12)
    throw std::invalid_argument("compact_alpha: p above the admissible endpoint 2(N+1)/(N+3)");
  // at the endpoint the denominator 2N-(N+1)p equals (N-1)p/(N+1) only up to
  // roundoff; return the exact limit value instead of amplifying that error
  if (std::abs(p - p_end) < 1e-12) return static_cast<double>(N + 1);
  return (N - 1) * p / (2.0 * N - (N + 1) * p);
}

double dual_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (!(p > 1.0)) throw std::invalid_argument("dual_exponent: p must be > 1 (or infinity)");
  return p / (p - 1.0);
}

double scaling_partner(int d, double q) {
  if (d < 1) throw std::invalid_argument("scaling_partner: d must be >= 1");
  if (!(q >= d)) throw std::invalid_argument("scaling_partner: q must be >= d");
  if (q == static_cast<double>(d)) return INFINITY;
  return 2.0 * q / (q - d);
}

namespace {

void check_query(const ExponentQuery& e) {
  if (e.d < 1) throw std::invalid_argument("classify_mixed: d must be >= 1");
  if (!(e.q >= 1.0) || std::isinf(e.q) || std::isnan(e.q))
    throw std::invalid_argument("classify_mixed: q must be finite and >= 1");
  if (!(e.alpha >= 1.0) || std::isnan(e.alpha))
    throw std::invalid_argument("classify_mixed: alpha must be >= 1 (infinity allowed)");
}

RegionVerdict classify_d1(double q, double alpha) {
  // positive results exist only from the q = 2 endpoint upward: the
  // sharp-admissible pair here is (p,q) = (4,2), and below it no Strichartz
  // estimate is available at any Schatten strength
  if (q < 2.0) return {Verdict::Fail, "below-endpoint-range"};
  if (alpha < q) return {Verdict::Fail, "schatten-lower-bound"};
  if (q == 2.0) {
    // operator norm holds at the endpoint; a finite-Schatten improvement is
    // expected (the noncompactness mechanism needs p = infinity, and here
    // p = 4) but nothing is proved either way
    if (std::isinf(alpha)) return {Verdict::Valid, "endpoint-unresolved-improvement-expected"};
    return {Verdict::Open, "endpoint-improvement-open"};
  }
  return {Verdict::Valid, "diagonal-valid"};  // q > 2, alpha >= q
}

RegionVerdict classify_d2(double q, double alpha) {
  if (q < 2.0) return {Verdict::Fail, "below-scaling-line"};
  // the d = 2 endpoint Strichartz estimate fails even at operator norm
  if (q == 2.0) return {Verdict::Fail, "endpoint-fails"};
  if (alpha < q) return {Verdict::Fail, "schatten-lower-bound"};
  if (q <= 3.0 && alpha < q / (q - 2.0)) return {Verdict::Fail, "translation-counterexample"};
  if (q == 3.0 && alpha == 3.0) return {Verdict::Fail, "endpoint-schatten-fails"};
  if (q > 3.0) return {Verdict::Valid, "diagonal-valid"};
  // 2 < q <= 3 above the necessary line: with no endpoint to interpolate
  // from, no positive result covers this strip
  return {Verdict::Open, "no-interpolation-known"};
}

RegionVerdict classify_general(int d, double q, double alpha) {
  const double dd = d;
  if (q < dd) return {Verdict::Fail, "below-scaling-line"};
  if (alpha < q) return {Verdict::Fail, "schatten-lower-bound"};
  if (q == dd) {
    // weighted extension is never compact at the sharp endpoint, so no
    // finite Schatten class can work; operator norm does (Keel-Tao)
    if (std::isinf(alpha)) return {Verdict::Valid, "keel-tao-endpoint"};
    return {Verdict::Fail, "noncompact-at-endpoint"};
  }
  const double threshold = q / (q - dd);
  if (q <= dd + 1.0 && alpha < threshold) return {Verdict::Fail, "translation-counterexample"};
  if (q == dd + 1.0 && alpha == dd + 1.0) return {Verdict::Fail, "endpoint-schatten-fails"};
  if (q > dd + 1.0) return {Verdict::Valid, "diagonal-valid"};
  if (alpha > threshold) return {Verdict::Valid, "interpolation-valid"};
  // d < q < d+1 with alpha exactly on the line q/(q-d): conjectured to hold
  // in the weak class, unresolved in the strong one
  return {Verdict::Open, "conjectured-line-open"};
}

}  // namespace

RegionVerdict classify_mixed(const ExponentQuery& query) {
  check_query(query);
  if (query.d == 1) return classify_d1(query.q, query.alpha);
  if (query.d == 2) return classify_d2(query.q, query.alpha);
  return classify_general(query.d, query.q, query.alpha);
}

RegionBoundary region_boundary(int d) {
  if (d < 3) throw std::invalid_argument("region_boundary: complete map needs d >= 3");
  const double corner = 1.0 / (d + 1);
  RegionBoundary b;
  b.d = d;
  b.vertices = {{{0.0, 0.0}, {corner, corner}, {1.0 / d, 0.0}}};
  b.excluded_vertex = {corner, corner};
  b.edges.push_back({{0.0, 0.0}, {corner, corner}, "valid-closed"});
  b.edges.push_back({{corner, corner}, {1.0 / d, 0.0}, "open-dashed"});
  b.edges.push_back({{1.0 / d, 0.0}, {0.0, 0.0}, "axis"});
  return b;
}

}  // namespace restlab
