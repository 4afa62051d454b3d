#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "afrel/relations.hpp"

namespace afrel {

/// Invalid run configuration (unknown claim, unsupported type, low cutoff).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DegreeRow {
  int degree = 0;
  long long lhs_dim = 0;
  long long rhs_dim = 0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Result of one claim check. verdict is "pass", "fail" or "exploratory".
struct VerificationReport {
  std::string claim;
  std::string anchor;
  std::string algebra;
  int level = 0;
  int cutoff = 0;
  int truncation_height = 0;
  std::string sign_convention;
  std::string lhs_label;
  std::string rhs_label;
  std::vector<DegreeRow> per_degree;
  std::vector<CheckResult> checks;
  std::string verdict;
  std::optional<std::string> witness;
  double seconds = 0;

  /// Exploratory reports never count as failures.
  bool passed() const { return verdict != "fail"; }
  std::string to_json(bool with_timing = true) const;
  std::string to_text() const;
};

enum class Applicability { Any, NotA1, A1Only, A1LevelOne };

struct ClaimInfo {
  std::string id;
  std::string anchor;
  Applicability applies = Applicability::Any;
  /// The cutoff must be at least level + min_cutoff_offset.
  int min_cutoff_offset = 2;
};

const std::vector<ClaimInfo>& claim_registry();
/// Throws ConfigError for unknown ids.
const ClaimInfo& find_claim(const std::string& id);
/// Throws ConfigError when the claim cannot run with these parameters.
void check_claim_config(const ClaimInfo& claim, const CartanType& type, int level, int cutoff);
std::string claims_json();

/// Runs claims against one engine, sharing kernel computations between them.
class Verifier {
 public:
  Verifier(const CartanType& type, int level, int cutoff, SignConvention sign = SignConvention::Standard,
           const std::string& cache_dir = "");
  VerificationReport run(const std::string& claim);
  RelationEngine& engine() { return *engine_; }

 private:
  using Blocks = std::map<std::pair<int, WeightKey>, std::vector<InducedVector>>;
  struct Kernel {
    GradedDims dims;
    Blocks vectors;
  };
  /// Explicit kernel of Psi on dominant blocks, all heights or height 0.
  const Kernel& kernel(bool base);
  const GradedDims& kernel_full() { return kernel(false).dims; }
  const GradedDims& kernel_base() { return kernel(true).dims; }
  void compare(VerificationReport& r, const GradedDims& lhs, const GradedDims& rhs, int from_degree = 0);

  void prop_4_1(VerificationReport& r);
  void prop_4_2(VerificationReport& r);
  void lemma_5_1(VerificationReport& r);
  void eq_5_2(VerificationReport& r);
  void prop_5_3(VerificationReport& r);
  void thm_5_4(VerificationReport& r);
  void lemma_6_1(VerificationReport& r);
  void thm_6_2(VerificationReport& r);
  void sl2_identity(VerificationReport& r);
  void remark_i(VerificationReport& r);
  void remark_ii(VerificationReport& r);

  CartanType type_;
  int level_;
  int cutoff_;
  SignConvention sign_;
  std::unique_ptr<RelationEngine> engine_;
  std::optional<Kernel> kernel_full_;
  std::optional<Kernel> kernel_base_;
};

VerificationReport verify(const std::string& claim, const CartanType& type, int level, int cutoff,
                          SignConvention sign = SignConvention::Standard, const std::string& cache_dir = "");

}  // namespace afrel
