#include "sqv/grassmann_enum.hpp"

#include <algorithm>

#include "sqv/subspace_enum.hpp"

namespace sqv {

namespace {

// Bounds for F(k) from the already chosen neighbours.
void sandwich(const FqRep& rep, const Point& f, const std::vector<bool>& chosen, Vertex k, Subspace& lo, Subspace& hi) {
  const FiniteField& fld = rep.field();
  lo = Subspace::zero(rep.dim(k));
  hi = Subspace::full(rep.dim(k));
  for (Vertex j : rep.dynkin().neighbors(k)) {
    if (!chosen[static_cast<std::size_t>(j)]) continue;
    lo = sum(fld, lo, image(fld, rep.arrow(j, k), f[j]));
    hi = intersect(fld, hi, preimage(fld, rep.arrow(k, j), f[j]));
  }
}

bool closed_with_chosen(const FqRep& rep, const Point& f, const std::vector<bool>& chosen, Vertex k) {
  const FiniteField& fld = rep.field();
  for (Vertex j : rep.dynkin().neighbors(k)) {
    if (!chosen[static_cast<std::size_t>(j)]) continue;
    if (!contains(fld, f[j], image(fld, rep.arrow(k, j), f[k]))) return false;
    if (!contains(fld, f[k], image(fld, rep.arrow(j, k), f[j]))) return false;
  }
  return true;
}

struct LSearch {
  const FqRep& rep;
  const DimVector& v;
  const PointVisitor& visit;
  std::vector<Vertex> order;
  Point f;
  std::vector<bool> chosen;

  bool run(std::size_t pos) {
    if (pos == order.size()) return visit(f);
    const Vertex k = order[pos];
    Subspace lo, hi;
    sandwich(rep, f, chosen, k, lo, hi);
    const std::size_t want = static_cast<std::size_t>(v[static_cast<std::size_t>(k)]);
    return for_each_subspace_between(rep.field(), lo, hi, want, [&](const Subspace& x) {
      f[k] = x;
      chosen[static_cast<std::size_t>(k)] = true;
      bool go = run(pos + 1);
      chosen[static_cast<std::size_t>(k)] = false;
      return go;
    });
  }
};

struct RSearch {
  const FqRep& rep;
  const DimVector& v;
  const PointVisitor& visit;
  Point f;
  std::vector<bool> chosen;

  // Vertices below the middle, from the middle outwards.
  bool run(Vertex k) {
    if (k < 0) return visit(f);
    const FiniteField& fld = rep.field();
    const Vertex sk = rep.dynkin().sigma(k);
    Subspace lo, hi;
    sandwich(rep, f, chosen, k, lo, hi);
    const std::size_t want = static_cast<std::size_t>(v[static_cast<std::size_t>(k)]);
    return for_each_subspace_between(fld, lo, hi, want, [&](const Subspace& x) {
      f[k] = x;
      f[sk] = perp_at(rep, sk, x);
      chosen[static_cast<std::size_t>(k)] = true;
      bool go = true;
      if (closed_with_chosen(rep, f, chosen, sk)) {
        chosen[static_cast<std::size_t>(sk)] = true;
        go = run(k - 1);
        chosen[static_cast<std::size_t>(sk)] = false;
      }
      chosen[static_cast<std::size_t>(k)] = false;
      return go;
    });
  }
};

bool shape_ok(const FqRep& rep, const DimVector& v) {
  if (v.size() != static_cast<std::size_t>(rep.rank())) throw std::invalid_argument("dimension vector has wrong length");
  for (Vertex i = 0; i < rep.rank(); ++i) {
    int vi = v[static_cast<std::size_t>(i)];
    if (vi < 0 || static_cast<std::size_t>(vi) > rep.dim(i)) return false;
  }
  return true;
}

}  // namespace

bool enumerate_L(const FqRep& rep, const DimVector& v, const PointVisitor& visit) {
  if (!shape_ok(rep, v)) return true;
  const int n = rep.rank();
  LSearch s{rep, v, visit, {}, Point{}, std::vector<bool>(static_cast<std::size_t>(n), false)};
  for (Vertex i = 0; i < n; ++i) s.f.spaces.push_back(Subspace::zero(rep.dim(i)));
  // Middle-out order keeps each new vertex adjacent to a chosen one.
  const Vertex mid = rep.dynkin().middle();
  s.order.push_back(mid);
  for (int t = 1; t < rep.dynkin().half_rank(); ++t) {
    s.order.push_back(mid - t);
    s.order.push_back(mid + t);
  }
  return s.run(0);
}

bool enumerate_R(const FqRep& rep, const DimVector& v, const PointVisitor& visit) {
  if (!rep.sigma_mode()) throw std::logic_error("enumerate_R requires sigma mode");
  if (!shape_ok(rep, v)) return true;
  const DynkinData& dyn = rep.dynkin();
  const int n = rep.rank();
  for (Vertex i = 0; i < n; ++i)
    if (v[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(dyn.sigma(i))] != static_cast<int>(rep.dim(i))) return true;
  RSearch s{rep, v, visit, Point{}, std::vector<bool>(static_cast<std::size_t>(n), false)};
  for (Vertex i = 0; i < n; ++i) s.f.spaces.push_back(Subspace::zero(rep.dim(i)));
  const Vertex mid = dyn.middle();
  return for_each_lagrangian_between(rep.field(), rep.gram(mid), Subspace::zero(rep.dim(mid)), Subspace::full(rep.dim(mid)),
                                     [&](const Subspace& x) {
                                       s.f[mid] = x;
                                       s.chosen[static_cast<std::size_t>(mid)] = true;
                                       bool go = s.run(mid - 1);
                                       s.chosen[static_cast<std::size_t>(mid)] = false;
                                       return go;
                                     });
}

std::vector<Point> collect_L(const FqRep& rep, const DimVector& v) {
  std::vector<Point> out;
  enumerate_L(rep, v, [&](const Point& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::vector<Point> collect_R(const FqRep& rep, const DimVector& v) {
  std::vector<Point> out;
  enumerate_R(rep, v, [&](const Point& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::vector<DimVector> candidate_dims(const FqRep& rep, bool sigma) {
  const int n = rep.rank();
  const DynkinData& dyn = rep.dynkin();
  std::vector<DimVector> out;
  DimVector v(static_cast<std::size_t>(n), 0);
  std::function<void(Vertex)> rec = [&](Vertex i) {
    if (i == n) {
      if (sigma) {
        for (Vertex k = 0; k < n; ++k)
          if (v[static_cast<std::size_t>(k)] + v[static_cast<std::size_t>(dyn.sigma(k))] != static_cast<int>(rep.dim(k))) return;
      }
      out.push_back(v);
      return;
    }
    for (int x = 0; x <= static_cast<int>(rep.dim(i)); ++x) {
      v[static_cast<std::size_t>(i)] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::uint64_t count_points(const FqRep& rep, const DimVector& v, bool sigma) {
  std::uint64_t c = 0;
  auto visit = [&](const Point&) {
    ++c;
    return true;
  };
  if (sigma)
    enumerate_R(rep, v, visit);
  else
    enumerate_L(rep, v, visit);
  return c;
}

std::vector<StratumCount> stratum_table(const FqRep& rep, bool sigma) {
  std::vector<StratumCount> out;
  for (auto& v : candidate_dims(rep, sigma)) {
    std::uint64_t c = count_points(rep, v, sigma);
    if (c > 0) out.push_back({v, c});
  }
  return out;
}

}  // namespace sqv
