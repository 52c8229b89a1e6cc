#include "sqv/path_category.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace sqv {

namespace {

std::string walk_str(const Walk& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i] + 1);
  return s + ")";
}

void walks_from(int n, Vertex start, int length, std::vector<Walk>& out) {
  Walk w{start};
  std::function<void()> rec = [&]() {
    if (static_cast<int>(w.size()) == length + 1) {
      out.push_back(w);
      return;
    }
    Vertex v = w.back();
    for (Vertex u : {v - 1, v + 1}) {
      if (u < 0 || u >= n) continue;
      w.push_back(u);
      rec();
      w.pop_back();
    }
  };
  rec();
}

}  // namespace

FramedQuiver::FramedQuiver(const DynkinData& dyn, std::vector<int> relation_signs)
    : dyn_(dyn), signs_(std::move(relation_signs)) {
  const int n = dyn_.rank();
  if (signs_.empty()) signs_.assign(static_cast<std::size_t>(n), 1);
  if (signs_.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("relation sign vector has wrong length");
  for (int k = 0; k + 1 < n; ++k) {
    arrows_.push_back({k, k + 1});
    arrows_.push_back({k + 1, k});
  }
}

HomSpaceTable::HomSpaceTable(const FramedQuiver& quiver) : quiver_(quiver) {
  const int n = dynkin().rank();
  const int top = max_length();
  const std::size_t nn = static_cast<std::size_t>(n * n);
  basis_.assign(nn, {});
  graded_.assign(nn, std::vector<std::size_t>(static_cast<std::size_t>(top + 2), 0));
  const Rationals Q;

  for (int len = 0; len <= top + 1; ++len) {
    for (Vertex i = 0; i < n; ++i) {
      std::vector<Walk> all;
      walks_from(n, i, len, all);
      for (Vertex j = 0; j < n; ++j) {
        std::vector<Walk> ws;
        for (auto& w : all)
          if (w.back() == j) ws.push_back(w);
        std::sort(ws.begin(), ws.end());
        if (ws.empty()) continue;
        const std::size_t m = ws.size();
        // Column c corresponds to ws[m-1-c]: lexicographically largest first.
        std::map<Walk, std::size_t> col;
        for (std::size_t a = 0; a < m; ++a) col[ws[a]] = m - 1 - a;
        std::set<std::pair<Walk, Walk>> gens;
        for (auto& w : ws)
          for (std::size_t t = 1; t + 1 < w.size(); ++t)
            if (w[t - 1] == w[t + 1]) gens.insert({Walk(w.begin(), w.begin() + static_cast<long>(t)),
                                                   Walk(w.begin() + static_cast<long>(t + 1), w.end())});
        QMat rel(gens.size(), m, 0);
        std::size_t r = 0;
        for (auto& [pre, suf] : gens) {
          Vertex k = pre.back();
          int s = quiver_.relation_sign(k);
          for (int dir : {1, -1}) {
            Vertex u = k + dir;
            if (u < 0 || u >= n) continue;
            Walk w = pre;
            w.push_back(u);
            w.insert(w.end(), suf.begin(), suf.end());
            rel(r, col.at(w)) += dir > 0 ? 1 : -s;
          }
          ++r;
        }
        auto e = rref(Q, rel);
        std::vector<bool> is_pivot(m, false);
        for (auto c : e.pivots) is_pivot[c] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = m; c-- > 0;)
          if (!is_pivot[c]) free_cols.push_back(c);  // ascending lex order of walks
        const std::size_t g = free_cols.size();
        if (len == top + 1) {
          if (g != 0)
            throw PairingError("paths of length " + std::to_string(len) + " from " + std::to_string(i + 1) + " to " +
                               std::to_string(j + 1) + " do not vanish");
          for (auto& w : ws) normal_[w] = {};
          continue;
        }
        auto& B = basis_[idx(i, j)];
        const std::size_t offset = B.size();
        graded_[idx(i, j)][static_cast<std::size_t>(len)] = g;
        std::vector<std::size_t> free_pos(m, 0);
        for (std::size_t t = 0; t < g; ++t) {
          free_pos[free_cols[t]] = t;
          B.push_back(ws[m - 1 - free_cols[t]]);
        }
        // Normal forms recorded relative to this degree; lifted to the full basis below.
        for (std::size_t a = 0; a < m; ++a) {
          std::size_t c = m - 1 - a;
          std::vector<mpq_class> v(offset + g, 0);
          if (!is_pivot[c]) {
            v[offset + free_pos[c]] = 1;
          } else {
            std::size_t row = static_cast<std::size_t>(
                std::find(e.pivots.begin(), e.pivots.end(), c) - e.pivots.begin());
            for (std::size_t t = 0; t < g; ++t) v[offset + t] = -e.echelon(row, free_cols[t]);
          }
          normal_[ws[a]] = std::move(v);
        }
      }
    }
  }
  // Pad normal forms to the full basis length of their hom space.
  for (auto& [w, v] : normal_) {
    if (static_cast<int>(w.size()) - 1 > top) continue;
    v.resize(basis_[idx(w.front(), w.back())].size(), 0);
  }
}

std::size_t HomSpaceTable::idx(Vertex i, Vertex j) const {
  const int n = dynkin().rank();
  if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("vertex out of range");
  return static_cast<std::size_t>(i * n + j);
}

const std::vector<Walk>& HomSpaceTable::basis(Vertex i, Vertex j) const { return basis_[idx(i, j)]; }

std::size_t HomSpaceTable::graded_dim(Vertex i, Vertex j, int length) const {
  if (length < 0 || length > max_length()) return 0;
  return graded_[idx(i, j)][static_cast<std::size_t>(length)];
}

std::vector<mpq_class> HomSpaceTable::normal_form(const Walk& w) const {
  if (w.empty()) throw std::invalid_argument("empty walk");
  const std::size_t d = dim(w.front(), w.back());
  if (static_cast<int>(w.size()) - 1 > max_length()) return std::vector<mpq_class>(d, 0);
  auto it = normal_.find(w);
  if (it == normal_.end()) throw std::invalid_argument("not a walk in the doubled quiver: " + walk_str(w));
  return it->second;
}

std::size_t HomSpaceTable::top_index(Vertex j) const {
  Vertex sj = dynkin().sigma(j);
  if (graded_dim(j, sj, max_length()) != 1)
    throw PairingError("top degree of Q(" + std::to_string(j + 1) + "," + std::to_string(sj + 1) + ") is not one-dimensional");
  const auto& B = basis(j, sj);
  for (std::size_t t = 0; t < B.size(); ++t)
    if (static_cast<int>(B[t].size()) - 1 == max_length()) return t;
  throw PairingError("missing top class");
}

PathClass HomSpaceTable::monomial(const Walk& w) const { return {w.front(), w.back(), normal_form(w)}; }

PathClass HomSpaceTable::compose(const PathClass& p, const PathClass& h) const {
  if (h.target != p.source) throw std::invalid_argument("composition of non-composable paths");
  PathClass out{h.source, p.target, std::vector<mpq_class>(dim(h.source, p.target), 0)};
  const auto& bh = basis(h.source, h.target);
  const auto& bp = basis(p.source, p.target);
  for (std::size_t a = 0; a < bh.size(); ++a) {
    if (sgn(h.coords[a]) == 0) continue;
    for (std::size_t b = 0; b < bp.size(); ++b) {
      if (sgn(p.coords[b]) == 0) continue;
      Walk w = bh[a];
      w.insert(w.end(), bp[b].begin() + 1, bp[b].end());
      auto nf = normal_form(w);
      mpq_class c = h.coords[a] * p.coords[b];
      for (std::size_t t = 0; t < nf.size(); ++t) out.coords[t] += c * nf[t];
    }
  }
  return out;
}

PathClass HomSpaceTable::sigma(const PathClass& p) const {
  const DynkinData& dyn = dynkin();
  PathClass out{dyn.sigma(p.source), dyn.sigma(p.target), std::vector<mpq_class>(dim(dyn.sigma(p.source), dyn.sigma(p.target)), 0)};
  const auto& bp = basis(p.source, p.target);
  for (std::size_t a = 0; a < bp.size(); ++a) {
    if (sgn(p.coords[a]) == 0) continue;
    Walk w = bp[a];
    for (auto& v : w) v = dyn.sigma(v);
    auto nf = normal_form(w);
    for (std::size_t t = 0; t < nf.size(); ++t) out.coords[t] += p.coords[a] * nf[t];
  }
  return out;
}

PathClass HomSpaceTable::bar(const PathClass& p) const {
  PathClass out{p.target, p.source, std::vector<mpq_class>(dim(p.target, p.source), 0)};
  const auto& bp = basis(p.source, p.target);
  for (std::size_t a = 0; a < bp.size(); ++a) {
    if (sgn(p.coords[a]) == 0) continue;
    Walk w(bp[a].rbegin(), bp[a].rend());
    auto nf = normal_form(w);
    for (std::size_t t = 0; t < nf.size(); ++t) out.coords[t] += p.coords[a] * nf[t];
  }
  return out;
}

PairingTable::PairingTable(const HomSpaceTable& table) : table_(&table) {
  const DynkinData& dyn = table.dynkin();
  const int n = dyn.rank();
  b_.resize(static_cast<std::size_t>(n * n));
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j) {
      const auto& rows = table.basis(i, j);
      const auto& cols = table.basis(dyn.sigma(i), j);
      QMat m(rows.size(), cols.size(), 0);
      for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
          m(a, b) = pair(table.monomial(rows[a]), table.monomial(cols[b]));
      b_[static_cast<std::size_t>(i * n + j)] = std::move(m);
    }
}

const QMat& PairingTable::matrix(Vertex i, Vertex j) const {
  const int n = table_->dynkin().rank();
  return b_[static_cast<std::size_t>(i * n + j)];
}

mpq_class PairingTable::pair(const PathClass& p, const PathClass& q) const {
  const DynkinData& dyn = table_->dynkin();
  if (p.target != q.target || q.source != dyn.sigma(p.source))
    throw std::invalid_argument("pairing arguments have incompatible endpoints");
  PathClass c = table_->compose(table_->sigma(q), table_->bar(p));
  return c.coords[table_->top_index(p.target)];
}

void check_pairing(const HomSpaceTable& table, const PairingTable& pairing) {
  const DynkinData& dyn = table.dynkin();
  const int n = dyn.rank();
  const Rationals Q;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j) {
      const QMat& m = pairing.matrix(i, j);
      if (m.rows() != m.cols() || rank(Q, m) != m.rows())
        throw PairingError("pairing B(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           ") is degenerate: " + to_string(m));
      if (pairing.matrix(dyn.sigma(i), j) != m.transpose())
        throw PairingError("pairing B(" + std::to_string(dyn.sigma(i) + 1) + "," + std::to_string(j + 1) +
                           ") is not the transpose of B(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  for (const Arrow& h : table.quiver().arrows()) {
    Vertex i = h.source, ip = h.target;
    PathClass hc = table.monomial({i, ip});
    PathClass sbh = table.sigma(table.bar(hc));  // sigma(ip) -> sigma(i)
    for (Vertex j = 0; j < n; ++j)
      for (const Walk& pw : table.basis(ip, j))
        for (const Walk& qw : table.basis(dyn.sigma(i), j)) {
          PathClass p = table.monomial(pw), q = table.monomial(qw);
          mpq_class lhs = pairing.pair(table.compose(p, hc), q);
          mpq_class rhs = pairing.pair(p, table.compose(q, sbh));
          if (lhs != rhs) {
            std::ostringstream os;
            os << "pairing adjunction fails for arrow " << i + 1 << "->" << ip + 1 << " at p=" << walk_str(pw)
               << " q=" << walk_str(qw) << ": " << lhs.get_str() << " != " << rhs.get_str();
            throw PairingError(os.str());
          }
        }
  }
}

}  // namespace sqv
