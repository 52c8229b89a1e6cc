#include "sqv/hecke.hpp"

#include <algorithm>
#include <sstream>

#include "sqv/subspace_enum.hpp"

namespace sqv {

namespace {

bool is_fixed_vertex(const DynkinData& dyn, Vertex v) { return dyn.sigma(v) == v; }

bool agree_except(const Point& f, const Point& g, const std::vector<Vertex>& skip) {
  for (std::size_t x = 0; x < f.spaces.size(); ++x) {
    bool skipped = false;
    for (Vertex s : skip) skipped = skipped || static_cast<std::size_t>(s) == x;
    if (!skipped && f.spaces[x] != g.spaces[x]) return false;
  }
  return true;
}

// a strictly inside b with codimension one.
bool hyperplane_of(const FiniteField& fld, const Subspace& a, const Subspace& b) {
  return a.dim() + 1 == b.dim() && contains(fld, b, a);
}

bool within(const FiniteField& fld, const Subspace& x, const StepBounds& b) {
  if (b.lower && !contains(fld, x, *b.lower)) return false;
  if (b.upper && !contains(fld, *b.upper, x)) return false;
  return true;
}

// New space at v one dimension above f(v) inside U.
bool raise_candidates(const FqRep& rep, const Point& f, Vertex v, const StepBounds& b, const SubspaceVisitor& visit) {
  const FiniteField& fld = rep.field();
  Subspace hi = up_space(rep, f, v);
  if (b.upper) hi = intersect(fld, hi, *b.upper);
  Subspace lo = f[v];
  if (b.lower) lo = sum(fld, lo, *b.lower);
  if (lo.dim() > f[v].dim() + 1 || !contains(fld, hi, lo)) return true;
  return for_each_subspace_between(fld, lo, hi, f[v].dim() + 1, visit);
}

// New space at v one dimension below f(v) containing the incoming images.
bool lower_candidates(const FqRep& rep, const Point& f, Vertex v, const StepBounds& b, const SubspaceVisitor& visit) {
  const FiniteField& fld = rep.field();
  if (f[v].dim() == 0) return true;
  Subspace lo = incoming_image(rep, f, v);
  if (b.lower) lo = sum(fld, lo, *b.lower);
  Subspace hi = f[v];
  if (b.upper) hi = intersect(fld, hi, *b.upper);
  if (!contains(fld, hi, lo)) return true;
  return for_each_subspace_between(fld, lo, hi, f[v].dim() - 1, visit);
}

// Lagrangians X of K(v) with dim X cap f(v) = dim f(v) - 1 containing the
// incoming images, v sigma-fixed.
bool lagrangian_candidates(const FqRep& rep, const Point& f, Vertex v, const StepBounds& b, const SubspaceVisitor& visit) {
  const FiniteField& fld = rep.field();
  if (f[v].dim() == 0) return true;
  const Subspace inc = incoming_image(rep, f, v);
  const Subspace u = up_space(rep, f, v);
  const Subspace full = Subspace::full(rep.dim(v));
  return for_each_subspace_between(fld, inc, f[v], f[v].dim() - 1, [&](const Subspace& y) {
    return for_each_lagrangian_between(fld, rep.gram(v), y, full, [&](const Subspace& x) {
      if (x == f[v]) return true;
      if (!contains(fld, u, x)) return true;
      if (!within(fld, x, b)) return true;
      return visit(x);
    });
  });
}

}  // namespace

Subspace incoming_image(const FqRep& rep, const Point& f, Vertex i) {
  const FiniteField& fld = rep.field();
  Subspace s = Subspace::zero(rep.dim(i));
  for (Vertex j : rep.dynkin().neighbors(i)) s = sum(fld, s, image(fld, rep.arrow(j, i), f[j]));
  return s;
}

Subspace up_space(const FqRep& rep, const Point& f, Vertex i) {
  const FiniteField& fld = rep.field();
  Subspace s = Subspace::full(rep.dim(i));
  for (Vertex j : rep.dynkin().neighbors(i)) s = intersect(fld, s, preimage(fld, rep.arrow(i, j), f[j]));
  return s;
}

ComplexData vertex_complex(const FqRep& rep, const Point& f, Vertex i) {
  const FiniteField& fld = rep.field();
  const auto nbrs = rep.dynkin().neighbors(i);
  const std::size_t ki = rep.dim(i);
  const std::size_t wi = static_cast<std::size_t>(rep.w()[static_cast<std::size_t>(i)]);
  std::size_t mid = wi;
  for (Vertex j : nbrs) mid += rep.dim(j);

  ComplexData c;
  c.i = i;
  c.d_minus = FMat(mid, ki, 0);
  c.d_zero = FMat(ki, mid, 0);
  const FMat& ev = rep.eval(i);
  for (std::size_t r = 0; r < wi; ++r)
    for (std::size_t k = 0; k < ki; ++k) c.d_minus(r, k) = ev(r, k);
  std::size_t off = wi;
  for (Vertex j : nbrs) {
    const FMat& out = rep.arrow(i, j);
    const FMat& in = rep.arrow(j, i);
    const bool plus = j == i + 1;
    for (std::size_t r = 0; r < rep.dim(j); ++r)
      for (std::size_t k = 0; k < ki; ++k) c.d_minus(off + r, k) = out(r, k);
    for (std::size_t k = 0; k < ki; ++k)
      for (std::size_t r = 0; r < rep.dim(j); ++r) c.d_zero(k, off + r) = plus ? in(k, r) : fld.neg(in(k, r));
    off += rep.dim(j);
  }

  const Subspace dm_image = image(fld, c.d_minus, f[i]);
  const Subspace composite = image(fld, multiply(fld, c.d_zero, c.d_minus), f[i]);
  if (composite.dim() != 0)
    throw std::logic_error("complex at vertex " + std::to_string(i + 1) + " does not square to zero");
  const std::size_t vi = f[i].dim();
  std::size_t middle = wi;
  for (Vertex j : nbrs) middle += f[j].dim();
  const std::size_t inc = incoming_image(rep, f, i).dim();
  c.h_minus1 = vi - dm_image.dim();
  if (c.h_minus1 != 0) throw StabilityError("nonzero H^-1 at vertex " + std::to_string(i + 1));
  c.h0 = middle - dm_image.dim() - inc;
  c.h1 = vi - inc;
  return c;
}

std::string to_string(const Letter& l) {
  const char* tag = "";
  switch (l.move) {
    case Move::Raise: tag = "E"; break;
    case Move::Lower: tag = "F"; break;
    case Move::Iota: tag = "B"; break;
    case Move::IotaClosed: tag = "Bbar"; break;
  }
  return std::string(tag) + std::to_string(l.v + 1);
}

std::string to_string(const Word& w) {
  std::ostringstream os;
  for (std::size_t k = 0; k < w.size(); ++k) os << (k ? " " : "") << to_string(w[k]);
  return os.str();
}

std::vector<Vertex> touched(const DynkinData& dyn, const Letter& l) {
  if (l.move == Move::Raise || l.move == Move::Lower || is_fixed_vertex(dyn, l.v)) return {l.v};
  return {l.v, dyn.sigma(l.v)};
}

DimVector letter_shift(const DynkinData& dyn, const Letter& l) {
  DimVector d(static_cast<std::size_t>(dyn.rank()), 0);
  switch (l.move) {
    case Move::Raise: d[static_cast<std::size_t>(l.v)] = 1; break;
    case Move::Lower: d[static_cast<std::size_t>(l.v)] = -1; break;
    case Move::Iota:
    case Move::IotaClosed:
      if (!is_fixed_vertex(dyn, l.v)) {
        d[static_cast<std::size_t>(l.v)] = 1;
        d[static_cast<std::size_t>(dyn.sigma(l.v))] = -1;
      }
      break;
  }
  return d;
}

bool in_relation(const FqRep& rep, const Letter& l, const Point& f, const Point& g) {
  const FiniteField& fld = rep.field();
  const DynkinData& dyn = rep.dynkin();
  const Vertex v = l.v;
  if (!agree_except(f, g, touched(dyn, l))) return false;
  switch (l.move) {
    case Move::Raise: return hyperplane_of(fld, f[v], g[v]);
    case Move::Lower: return hyperplane_of(fld, g[v], f[v]);
    case Move::Iota:
    case Move::IotaClosed:
      if (!is_fixed_vertex(dyn, v)) return hyperplane_of(fld, f[v], g[v]) && hyperplane_of(fld, g[dyn.sigma(v)], f[dyn.sigma(v)]);
      if (l.move == Move::IotaClosed && f[v] == g[v]) return true;
      return f[v].dim() == g[v].dim() && f[v].dim() > 0 && intersect(fld, f[v], g[v]).dim() + 1 == f[v].dim();
  }
  return false;
}

bool for_each_partner(const FqRep& rep, const Letter& l, const Point& f, const PointVisitor& visit, const StepBounds& bounds) {
  const DynkinData& dyn = rep.dynkin();
  const Vertex v = l.v;
  Point g = f;
  switch (l.move) {
    case Move::Raise:
      return raise_candidates(rep, f, v, bounds, [&](const Subspace& x) {
        g[v] = x;
        return visit(g);
      });
    case Move::Lower:
      return lower_candidates(rep, f, v, bounds, [&](const Subspace& x) {
        g[v] = x;
        return visit(g);
      });
    case Move::Iota:
    case Move::IotaClosed:
      if (!is_fixed_vertex(dyn, v)) {
        const Vertex sv = dyn.sigma(v);
        return raise_candidates(rep, f, v, bounds, [&](const Subspace& x) {
          g[v] = x;
          g[sv] = perp_at(rep, sv, x);
          return visit(g);
        });
      }
      if (!lagrangian_candidates(rep, f, v, bounds, [&](const Subspace& x) {
            g[v] = x;
            return visit(g);
          }))
        return false;
      if (l.move == Move::IotaClosed && within(rep.field(), f[v], bounds)) return visit(f);
      return true;
  }
  return true;
}

bool for_each_reverse_partner(const FqRep& rep, const Letter& l, const Point& f, const PointVisitor& visit) {
  const DynkinData& dyn = rep.dynkin();
  const Vertex v = l.v;
  switch (l.move) {
    case Move::Raise: return for_each_partner(rep, {Move::Lower, v}, f, visit);
    case Move::Lower: return for_each_partner(rep, {Move::Raise, v}, f, visit);
    case Move::Iota:
    case Move::IotaClosed: {
      if (is_fixed_vertex(dyn, v)) return for_each_partner(rep, l, f, visit);
      const Vertex sv = dyn.sigma(v);
      Point g = f;
      return lower_candidates(rep, f, v, {}, [&](const Subspace& x) {
        g[v] = x;
        g[sv] = perp_at(rep, sv, x);
        return visit(g);
      });
    }
  }
  return true;
}

std::vector<Point> partners(const FqRep& rep, const Letter& l, const Point& f) {
  std::vector<Point> out;
  for_each_partner(rep, l, f, [&](const Point& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

std::vector<Point> reverse_partners(const FqRep& rep, const Letter& l, const Point& f) {
  std::vector<Point> out;
  for_each_reverse_partner(rep, l, f, [&](const Point& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

std::size_t partner_chi(const FqRep& rep, const Letter& l, const Point& f) {
  const Vertex v = l.v;
  switch (l.move) {
    case Move::Raise: return up_space(rep, f, v).dim() - f[v].dim();
    case Move::Lower: return f[v].dim() - incoming_image(rep, f, v).dim();
    case Move::Iota:
    case Move::IotaClosed: {
      const bool closed = l.move == Move::IotaClosed && is_fixed_vertex(rep.dynkin(), v);
      if (!is_fixed_vertex(rep.dynkin(), v)) return up_space(rep, f, v).dim() - f[v].dim();
      return f[v].dim() - incoming_image(rep, f, v).dim() + (closed ? 1 : 0);
    }
  }
  return 0;
}

std::size_t reverse_partner_chi(const FqRep& rep, const Letter& l, const Point& f) {
  const Vertex v = l.v;
  switch (l.move) {
    case Move::Raise: return partner_chi(rep, {Move::Lower, v}, f);
    case Move::Lower: return partner_chi(rep, {Move::Raise, v}, f);
    case Move::Iota:
    case Move::IotaClosed:
      if (is_fixed_vertex(rep.dynkin(), v)) return partner_chi(rep, l, f);
      return f[v].dim() - incoming_image(rep, f, v).dim();
  }
  return 0;
}

Point glue_lower(const FqRep& rep, const Point& f, const Point& g, Vertex i) {
  const DynkinData& dyn = rep.dynkin();
  const Vertex si = dyn.sigma(i);
  if (si == i) throw std::invalid_argument("gluing needs a vertex moved by sigma");
  if (!agree_except(f, g, {i, si})) throw std::invalid_argument("points differ away from the glued vertices");
  const FiniteField& fld = rep.field();
  Point h = f;
  h[i] = intersect(fld, f[i], g[i]);
  h[si] = sum(fld, f[si], g[si]);
  return h;
}

Point glue_upper(const FqRep& rep, const Point& f, const Point& g, Vertex i) { return glue_lower(rep, f, g, rep.dynkin().sigma(i)); }

namespace {

struct ChainSearch {
  const FqRep& rep;
  const Word& word;
  const Point& target;
  const std::function<bool(const std::vector<Point>&)>* visit = nullptr;

  std::vector<std::vector<Vertex>> touch;
  std::vector<std::vector<bool>> touched_from;  // touched_from[m][x]: some letter >= m touches x
  std::vector<bool> free_step;
  std::vector<StepBounds> bounds;
  std::vector<Point> chain;
  std::uint64_t count = 0;
  bool reached_free = false;

  ChainSearch(const FqRep& r, const Word& w, const Point& t) : rep(r), word(w), target(t) {
    const DynkinData& dyn = rep.dynkin();
    const std::size_t k = word.size();
    const std::size_t n = static_cast<std::size_t>(rep.rank());
    for (auto& l : word) touch.push_back(touched(dyn, l));
    touched_from.assign(k + 1, std::vector<bool>(n, false));
    for (std::size_t m = k; m-- > 0;) {
      touched_from[m] = touched_from[m + 1];
      for (Vertex x : touch[m]) touched_from[m][static_cast<std::size_t>(x)] = true;
    }
    free_step.assign(k, false);
    bounds.assign(k, StepBounds{});
    for (std::size_t m = 0; m < k; ++m) {
      for (Vertex x : touch[m]) free_step[m] = free_step[m] || touched_from[m + 1][static_cast<std::size_t>(x)];
      if (free_step[m]) bounds[m] = derive_bounds(m);
    }
  }

  // +1: the next letter touching x raises it, -1: lowers it, 0: no bound.
  int direction(const Letter& l, Vertex x) const {
    const DynkinData& dyn = rep.dynkin();
    switch (l.move) {
      case Move::Raise: return 1;
      case Move::Lower: return -1;
      case Move::Iota:
      case Move::IotaClosed:
        if (is_fixed_vertex(dyn, l.v)) return 0;
        return x == l.v ? 1 : -1;
    }
    return 0;
  }

  // Bounds on the new space at word[m].v read off from the letters that touch
  // the same vertices next, when those are the last letters to touch them.
  StepBounds derive_bounds(std::size_t m) const {
    const FiniteField& fld = rep.field();
    const Letter& l = word[m];
    StepBounds b;
    if ((l.move == Move::Iota || l.move == Move::IotaClosed) && is_fixed_vertex(rep.dynkin(), l.v)) return b;
    for (Vertex x : touch[m]) {
      std::size_t next = m + 1;
      while (next < word.size() && std::find(touch[next].begin(), touch[next].end(), x) == touch[next].end()) ++next;
      if (next == word.size()) continue;
      if (touched_from[next + 1][static_cast<std::size_t>(x)]) continue;
      int dir = direction(word[next], x);
      if (dir == 0) continue;
      // dir > 0: the current space at x lies inside target(x).
      Subspace z = target[x];
      bool upper = dir > 0;
      if (x != l.v) {
        z = perp_at(rep, l.v, z);
        upper = !upper;
      }
      if (upper)
        b.upper = b.upper ? intersect(fld, *b.upper, z) : z;
      else
        b.lower = b.lower ? sum(fld, *b.lower, z) : z;
    }
    return b;
  }

  bool settled(std::size_t m, const Point& p) const {
    for (std::size_t x = 0; x < p.spaces.size(); ++x)
      if (!touched_from[m][x] && p.spaces[x] != target.spaces[x]) return false;
    return true;
  }

  bool step(std::size_t m, const Point& p) {
    if (m == word.size()) {
      if (p != target) return true;
      ++count;
      return visit ? (*visit)(chain) : true;
    }
    if (!settled(m, p)) return true;
    const Letter& l = word[m];
    if (!free_step[m]) {
      Point q = p;
      for (Vertex x : touch[m]) q[x] = target[x];
      if (!in_relation(rep, l, p, q) || !is_subrep(rep, q)) return true;
      return descend(m, q);
    }
    reached_free = true;
    return for_each_partner(rep, l, p, [&](const Point& q) { return descend(m, q); }, bounds[m]);
  }

  bool descend(std::size_t m, const Point& q) {
    const bool inner = m + 1 < word.size();
    if (inner) chain.push_back(q);
    bool go = step(m + 1, q);
    if (inner) chain.pop_back();
    return go;
  }
};

}  // namespace

WordCount count_word(const FqRep& rep, const Word& word, const Point& s, const Point& t) {
  ChainSearch cs(rep, word, t);
  cs.step(0, s);
  return {cs.count, cs.reached_free};
}

bool for_each_chain(const FqRep& rep, const Word& word, const Point& s, const Point& t,
                    const std::function<bool(const std::vector<Point>&)>& visit) {
  ChainSearch cs(rep, word, t);
  cs.visit = &visit;
  return cs.step(0, s);
}

}  // namespace sqv
