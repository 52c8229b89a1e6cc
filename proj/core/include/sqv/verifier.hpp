#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sqv/chi.hpp"
#include "sqv/grassmann_enum.hpp"
#include "sqv/hecke.hpp"
#include "sqv/kan_rep.hpp"
#include "sqv/path_category.hpp"

namespace sqv {

// Everything derived from (d, w, mode): path category, pairing, K_R W, and
// the enumerated points per prime (cached).
class Workbench {
 public:
  // Throws PairingError or FormError when the structure checks fail, and
  // std::invalid_argument on malformed input.
  Workbench(int d, DimVector w, bool sigma_mode, std::vector<int> relation_signs = {});

  const DynkinData& dynkin() const { return dyn_; }
  const HomSpaceTable& table() const { return *table_; }
  const PairingTable* pairing() const { return pairing_.get(); }
  const KanRep& kan() const { return kan_; }
  const DimVector& w() const { return w_; }
  bool sigma_mode() const { return sigma_; }

  const FqRep& rep(unsigned p) const;
  const RepTower& tower(unsigned p) const;
  // Points of the sigma quiver variety in sigma mode, of L(w) otherwise,
  // ordered by dimension vector and then by enumeration order.
  const std::vector<Point>& points(unsigned p) const;
  // Points of L(w) regardless of mode.
  const std::vector<Point>& all_subreps(unsigned p) const;

 private:
  DynkinData dyn_;
  DimVector w_;
  bool sigma_;
  std::unique_ptr<HomSpaceTable> table_;
  std::unique_ptr<PairingTable> pairing_;
  KanRep kan_;
  mutable std::recursive_mutex mu_;
  mutable std::map<unsigned, std::unique_ptr<FqRep>> reps_;
  mutable std::map<unsigned, std::unique_ptr<RepTower>> towers_;
  mutable std::map<unsigned, std::vector<Point>> points_;
  mutable std::map<unsigned, std::vector<Point>> subreps_;
};

enum class RelationName { Weight, EFNakajima, SigmaH, RootH, BEF, SerreEE, Serre1Iota, Serre2Iota, ISerre };

std::string to_string(RelationName n);
std::optional<RelationName> parse_relation_name(const std::string& s);
const std::vector<RelationName>& all_relation_names();
bool relation_needs_sigma(RelationName n);

struct RelationInstance {
  RelationName name = RelationName::Weight;
  Vertex i = -1;  // -1: all vertices (weight-type checks)
  Vertex j = -1;
  bool closed = false;  // use the closed iota correspondence at sigma-fixed vertices

  std::string label() const;
};

// All instances of the named relations whose vertex conditions hold.
std::vector<RelationInstance> admissible_instances(const DynkinData& dyn, bool sigma_mode,
                                                   const std::vector<RelationName>& names);

struct ChiTally {
  std::string label;  // word or fiber kind
  std::string poly;
  long long chi = 0;
  std::uint64_t occurrences = 0;
};

struct VerificationReport {
  std::string title;
  RelationInstance instance;
  unsigned prime = 0;
  bool pass = true;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> witnesses;  // capped; full subspace data
  std::map<std::string, std::uint64_t> tallies;
  std::vector<ChiTally> chi_details;  // sorted by (label, poly)
  // Every interpolated polynomial in this report had at least this many
  // held-out samples (0 when nothing was interpolated).
  std::size_t min_held_out = 0;
};

struct VerifyOptions {
  unsigned jobs = 1;
  std::size_t max_witnesses = 5;
  // Diagonal fibers are interpolated over extension fields when their
  // largest predicted count stays below this budget.
  std::uint64_t interpolation_budget = 200000;
};

VerificationReport verify(const Workbench& wb, const RelationInstance& inst, unsigned p, const VerifyOptions& opt = {});

VerificationReport verify_weight(const Workbench& wb, const RelationInstance& inst, unsigned p, const VerifyOptions& opt);
VerificationReport verify_B_EF(const Workbench& wb, const RelationInstance& inst, unsigned p, const VerifyOptions& opt);
VerificationReport verify_serre1(const Workbench& wb, const RelationInstance& inst, unsigned p, const VerifyOptions& opt);
VerificationReport verify_serre2(const Workbench& wb, const RelationInstance& inst, unsigned p, const VerifyOptions& opt);
VerificationReport verify_iserre(const Workbench& wb, const RelationInstance& inst, unsigned p, const VerifyOptions& opt);
VerificationReport verify_nakajima(const Workbench& wb, const RelationInstance& inst, unsigned p, const VerifyOptions& opt);
VerificationReport verify_serre_EE(const Workbench& wb, const RelationInstance& inst, unsigned p, const VerifyOptions& opt);

// Pointwise checks on every point of L(w): H^-1 = 0, fiber counts equal
// [phi]_q and [eps]_q, phi - eps equals the weight, and in sigma mode the
// duality eps_i(F) = phi_{sigma i}(F^perp) with weight(F^perp) = -sigma weight(F).
VerificationReport verify_pointwise(const Workbench& wb, unsigned p, const VerifyOptions& opt = {});

// Incoming-image lemmas on every iota pair (F1, F2) at a vertex j adjacent to
// a sigma-fixed vertex i.
VerificationReport verify_image_lemmas(const Workbench& wb, unsigned p, const VerifyOptions& opt = {});

// Symplectic linear algebra lemmas in dimension 2n for n <= n_max.
struct LemmaOptions {
  std::size_t n_max = 3;
  std::vector<unsigned> exhaustive_primes{2, 3};
  std::vector<unsigned> interpolation_primes{2, 3, 5, 7, 11, 13};
};
std::vector<VerificationReport> lemma_suite(const LemmaOptions& opt);

std::string describe(const Point& f);

}  // namespace sqv
