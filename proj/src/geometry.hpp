#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace lgl {

// Slopes strictly descending in (0, 1). Line i (1-based) is y = s_i x.
// Sector_i (1 <= i <= k+1) is the region above line i and not above line i-1.
struct Configuration {
  std::vector<Rational> slopes;
  int k() const { return static_cast<int>(slopes.size()); }
  const Rational& s(int line) const { return slopes[line - 1]; }
};

Configuration make_configuration(std::vector<Rational> slopes);
BigInt configuration_lcm(const Configuration& cfg);  // lcm of slope denominators
long long configuration_precision(const Configuration& cfg);  // largest slope denominator

using Point = std::vector<Rational>;
using ActivationVector = std::vector<Rational>;

// Counts #{j <= n : ps_j > s_i j} per line, exact.
std::vector<long long> activation_counts(const Configuration& cfg, const Bits& x);
ActivationVector activations_discrete(const Configuration& cfg, const Bits& x);
bool activations_monotone(const ActivationVector& b);

// Piecewise-linear continuous test-function: breakpoints from (0,0) to x = 1,
// slopes in [0, 1].
struct PiecewiseLinear {
  std::vector<std::pair<Rational, Rational>> points;
};

bool piecewise_valid(const PiecewiseLinear& f, const Configuration& cfg, std::string* why = nullptr);
ActivationVector activations_continuous(const PiecewiseLinear& f, const Configuration& cfg);

// Pairs (y1, y2) of line indices; the final pair has y1 == y2 and marks the
// line the last curve ends on.
struct BasisSchemaSpec {
  std::vector<std::pair<int, int>> pairs;
  int curves() const { return static_cast<int>(pairs.size()) - 1; }
  bool operator==(const BasisSchemaSpec&) const = default;
};

bool basis_spec_valid(const BasisSchemaSpec& spec, int k);
std::vector<BasisSchemaSpec> basis_schemas(int k);

struct Segment {
  int idx = 1;    // line the segment ends on
  int sec = 1;    // sector the segment lies in
  int curve = 0;  // first curve owning the segment; the lead-in has curve 0
};

// segments[0] is the lead-in (length zero for a function starting at the origin).
struct Schema {
  int k = 1;
  std::vector<Segment> segments;
  int M() const { return static_cast<int>(segments.size()); }
};

bool schema_valid(const Schema& schema, std::string* why = nullptr);
Schema schema_materialize(const BasisSchemaSpec& spec, int k);
// Index of the segment of curve c (1-based) lying in sector sec, or -1. A curve
// shares its first excursion with the previous curve's last one.
int schema_segment_of(const Schema& schema, int curve, int sec);

enum class Sense { Ge, Gt, Le, Lt };

// coef . x  (sense)  bias
struct Halfspace {
  std::vector<BigInt> coef;
  BigInt bias;
  Sense sense = Sense::Ge;
};

// Signed slack: positive inside, zero on the boundary.
Rational margin(const Point& x, const Halfspace& h);
bool satisfies(const Point& x, const Halfspace& h);

struct Polytope {
  int dim = 0;
  std::vector<Halfspace> faces;  // read as closed
  bool sum_to_one = true;
};

// One face per segment, cleared to integer coefficients. With drop_lead_in the
// lead-in coordinate is fixed at zero and removed, leaving M - 1 coordinates.
Polytope segment_polytope(const Schema& schema, const Configuration& cfg, bool drop_lead_in = false);

// L[i][j] = 1 iff segment j lies above line i+1.
std::vector<std::vector<int>> activation_matrix(const Schema& schema);
ActivationVector activations_from_segments(const Schema& schema, const std::vector<Rational>& lengths);

struct MonotoneDecomposition {
  std::vector<std::pair<int, int>> pairs;  // curve pairs, then the terminal pair
  std::vector<Rational> cuts;              // T_0 = 0, T_1, ...
};

struct LineEvent {
  Rational x;
  int line = 1;
};

// Intersections with the lines at x > 0 after endpoint normalization, sorted.
std::vector<LineEvent> line_events(const PiecewiseLinear& f, const Configuration& cfg);
MonotoneDecomposition decompose_into_monotone_curves(const PiecewiseLinear& f, const Configuration& cfg);

struct SectorPiece {
  int sec = 1;
  Rational length;
};

// Sector-wise sums of a piece that starts on line `from` and ends on line `to`,
// laid out as a monotone curve: [lead_in, first excursion, crossings..., last
// excursion].
std::vector<Rational> rearrange_monotone(const std::vector<SectorPiece>& piece, const Rational& lead_in, int from,
                                         int to);

struct BasisRealization {
  BasisSchemaSpec spec;
  Schema schema;
  std::vector<Rational> lengths;  // one per schema segment, lead-in first
};

// Monotone-curve decomposition plus per-piece rearrangement, lifted onto a full
// basis schema.
BasisRealization rearrange_to_basis(const PiecewiseLinear& f, const Configuration& cfg);

std::vector<Point> polytope_vertices(const Polytope& p);
Point vertex_average(const std::vector<Point>& v);

// Snaps all but the last coordinate to the grid 1/(dN) and restores the sum.
Point round_to_low_precision(const Point& x, const BigInt& N);
BigInt common_denominator(const std::vector<Rational>& v);

BigInt discretization_grain(const std::vector<Rational>& lengths, const Configuration& cfg);
// Lattice path of length n following the schema; n must be a multiple of the grain.
Bits discretize(const Schema& schema, const std::vector<Rational>& lengths, const Configuration& cfg, long long n);

}  // namespace lgl
