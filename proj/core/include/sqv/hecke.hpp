#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqv/grassmann_enum.hpp"
#include "sqv/kan_rep.hpp"

namespace sqv {

// The three-term complex at vertex i
//   F(i) -> W(i) + sum_{i~j} F(j) -> F(i)
// stored in ambient coordinates: d_minus maps K(i) into W(i) + sum K(j), and
// d_zero maps W(i) + sum K(j) back to K(i) with zero W-component and signs
// +1 for the neighbour i+1, -1 for i-1.
struct ComplexData {
  Vertex i = 0;
  FMat d_minus;
  FMat d_zero;
  std::size_t h_minus1 = 0;
  std::size_t h0 = 0;
  std::size_t h1 = 0;

  std::size_t phi() const { return h0; }
  std::size_t eps() const { return h1; }
};

class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ComplexData vertex_complex(const FqRep& rep, const Point& f, Vertex i);

// Sum of the images of the neighbouring spaces inside K(i).
Subspace incoming_image(const FqRep& rep, const Point& f, Vertex i);
// Largest X with h(X) inside F(j) for every arrow out of i.
Subspace up_space(const FqRep& rep, const Point& f, Vertex i);

// Correspondence letters. Raise(v)/Lower(v) are the Hecke moves adding or
// removing e_v; Iota(v) is the iota Hecke move (raise v, lower sigma v, or a
// Lagrangian replacement at a sigma-fixed vertex); IotaClosed adds the
// diagonal at sigma-fixed vertices.
enum class Move { Raise, Lower, Iota, IotaClosed };

struct Letter {
  Move move;
  Vertex v;
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

std::string to_string(const Letter& l);
std::string to_string(const Word& w);

// Vertices whose spaces a letter may change.
std::vector<Vertex> touched(const DynkinData& dyn, const Letter& l);
// Change of dimension vector along a letter.
DimVector letter_shift(const DynkinData& dyn, const Letter& l);

// (f, g) in the correspondence of the letter.
bool in_relation(const FqRep& rep, const Letter& l, const Point& f, const Point& g);

// Optional bounds on the new space at the letter's vertex v.
struct StepBounds {
  std::optional<Subspace> lower;
  std::optional<Subspace> upper;
};

// All g with (f, g) in the correspondence of the letter (for Iota letters f
// must be sigma-fixed). Deterministic order; the visitor returns false to stop.
bool for_each_partner(const FqRep& rep, const Letter& l, const Point& f, const PointVisitor& visit,
                      const StepBounds& bounds = {});
// All g with (g, f) in the correspondence.
bool for_each_reverse_partner(const FqRep& rep, const Letter& l, const Point& f, const PointVisitor& visit);

std::vector<Point> partners(const FqRep& rep, const Letter& l, const Point& f);
std::vector<Point> reverse_partners(const FqRep& rep, const Letter& l, const Point& f);

// Euler characteristic of the partner set, read off from its structure: a
// projective space P(U/F(v)) for raising moves, P(F(v)/I) dual for lowering
// moves, and the Lagrangian locus {X : dim X cap F(v) = v-1, X >= I} whose
// characteristic is the codimension of I at a sigma-fixed vertex.
std::size_t partner_chi(const FqRep& rep, const Letter& l, const Point& f);
std::size_t reverse_partner_chi(const FqRep& rep, const Letter& l, const Point& f);

// Gluing of two points agreeing away from {i, sigma i}: intersection at i and
// sum at sigma i. glue_upper(f, g, i) = glue_lower(f, g, sigma i).
Point glue_lower(const FqRep& rep, const Point& f, const Point& g, Vertex i);
Point glue_upper(const FqRep& rep, const Point& f, const Point& g, Vertex i);

// Number of chains s = p0 -> p1 -> ... -> pk = t through the letters of the
// word over the field of rep. `free_steps` reports whether any enumeration
// branch was needed; when it stays false the count is field independent.
struct WordCount {
  std::uint64_t count = 0;
  bool free_steps = false;
};
WordCount count_word(const FqRep& rep, const Word& word, const Point& s, const Point& t);

// Visits every chain (p1, ..., p_{k-1}) of intermediate points.
bool for_each_chain(const FqRep& rep, const Word& word, const Point& s, const Point& t,
                    const std::function<bool(const std::vector<Point>&)>& visit);

}  // namespace sqv
