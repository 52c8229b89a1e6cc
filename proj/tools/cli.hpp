#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqv/chi.hpp"
#include "sqv/dynkin.hpp"

namespace sqv::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int d = 0;
  DimVector w;
  bool sigma_mode = true;
  std::vector<unsigned> primes{2, 3};
  std::optional<DimVector> v_min;
  std::optional<DimVector> v_max;
  // Relation names, or: all, pointwise, image_lemmas, lemmas.
  std::vector<std::string> relations{"all"};
  std::vector<int> relation_signs;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string format = "json";
  std::string out;
  std::string families;
  std::uint64_t interpolation_budget = 200000;
  std::size_t max_witnesses = 5;
  std::size_t lemma_n_max = 3;

  // Stable key = value rendering of every field that affects results.
  std::string canonical() const;
  // 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string hash() const;
};

// Flat "key = value" text; '#' starts a comment; vectors as [a,b,c].
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
std::vector<unsigned> parse_prime_list(const std::string& text);
std::vector<std::string> parse_name_list(const std::string& text);
// Throws ConfigError.
void validate(const RunConfig& cfg);

struct NamedFamily {
  std::string name;
  FiberFamily family;
  std::optional<std::size_t> degree_bound;
};
// Sections "[family NAME]" followed by key = value lines.
std::vector<NamedFamily> parse_families(std::istream& in);

// Each command writes its report to `out` and returns an exit code.
int cmd_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_chi(const RunConfig& cfg, const std::vector<NamedFamily>& families, std::ostream& out, std::ostream& err);
int cmd_dump_kan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_dump_paths(const RunConfig& cfg, std::ostream& out, std::ostream& err);

const char* tool_version();

}  // namespace sqv::cli
