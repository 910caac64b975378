#pragma once
#include <array>
#include <string>
#include <vector>

namespace restlab {

// Exponent triple for the mixed Schatten-Strichartz estimate. alpha may be
// INFINITY (operator norm); q is tied to p through 2/p + d/q = 1.
struct ExponentQuery {
  int d = 3;
  double q = 0.0;
  double alpha = 0.0;
};

enum class Verdict { Valid, Fail, Open };

const char* verdict_name(Verdict v);  // "VALID" / "FAIL" / "OPEN"

// verdict plus the deciding fact, as a stable slug (serialized to CSV)
struct RegionVerdict {
  Verdict verdict = Verdict::Open;
  std::string reason;
};

// Optimal Schatten exponent for the compact-surface orthonormal estimate:
// alpha = (N-1)p / (2N - (N+1)p) on 1 <= p <= 2(N+1)/(N+3); the right
// endpoint returns exactly N+1.
double compact_alpha(int N, double p);

// Holder conjugate p' = p/(p-1); p = infinity maps to 1.
double dual_exponent(double p);

// p solving 2/p + d/q = 1, i.e. p = 2q/(q-d); q = d returns INFINITY.
double scaling_partner(int d, double q);

// Classifier for "does the mixed estimate hold in S^alpha at (d, q)?".
// Complete for d >= 3; d = 1 and d = 2 are partial maps (no interpolation
// leg exists below the diagonal there).
RegionVerdict classify_mixed(const ExponentQuery& query);

// Boundary of the valid region in the (1/q, 1/alpha) plane for d >= 3:
// closed polygon (0,0) - (1/(d+1), 1/(d+1)) - (1/d, 0).
struct BoundaryEdge {
  std::array<double, 2> from{};
  std::array<double, 2> to{};
  // "valid-closed": on the diagonal 1/alpha = 1/q (estimate holds there)
  // "open-dashed":  on the line 1/alpha = 1 - d/q (conjectured only)
  // "axis":         the 1/alpha = 0 segment closing the polygon
  std::string style;
};

struct RegionBoundary {
  int d = 3;
  std::vector<std::array<double, 2>> vertices;
  std::vector<BoundaryEdge> edges;
  std::array<double, 2> excluded_vertex{};  // (1/(d+1), 1/(d+1)), open circle
};

RegionBoundary region_boundary(int d);

}  // namespace restlab
