#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nahmforge/nahm.hpp"
#include "nahmforge/product.hpp"
#include "nahmforge/sumspec.hpp"

namespace nahmforge {

// One concrete instantiation of an identity: every parameter bound to a
// rational/monomial value.  Exactly one of the lhs payloads below is active,
// selected by the owning Identity's kind.
struct RegInstance {
  std::string label;       // parameter binding, e.g. "b=1/3"; empty if none
  std::string rhs;         // product-grammar right side ("" when unused)
  Rat nomeScale{1};        // the left sum's variable is q^nomeScale
  std::optional<Rat> tableC;  // tabled modular constant, in nome units

  // kind == "nahm": an explicit triple, optionally with monomial arguments
  // folded into B (argument exponents are in plain q).
  std::optional<NahmTriple> triple;
  bool includeC = false;
  std::vector<Monomial> args;

  // kind == "sumspec"
  std::optional<SumSpec> sum;

  // kind == "product": both sides are product expressions.
  std::optional<std::string> lhsProduct;

  // kind == "hyper": a basic hypergeometric evaluation.
  std::optional<std::vector<Monomial>> hyperNumer;
  std::optional<std::vector<Monomial>> hyperDenom;
  Rat hyperBase{1};
  std::optional<Monomial> hyperZ;

  // kind == "bailey": a named transform chain; rhs is the printed closed
  // form of the final limiting beta sum.
  std::optional<std::string> chain;
  std::optional<Monomial> chainU;

  // kind == "ct": constant-term evaluation of the four-variable product
  // kernel, cross-checked against the direct sum of `triple` (above).
  std::optional<std::vector<Monomial>> ctArgs;  // u, v, w, t

  // kind == "symmetry": the sum over `triple` is invariant under permuting
  // coordinates by perm (entry i of the permuted B is B[perm[i]]).
  std::optional<std::vector<std::size_t>> perm;
};

struct Identity {
  std::string id;
  std::string status;  // classical | proved | conjectural
  std::string source;
  std::string kind;    // nahm | sumspec | product | hyper | bailey | ct | symmetry
  bool modularCheck = true;
  std::string tableExample;  // owning example table, "" when untied
  std::vector<RegInstance> instances;
};

struct CheckReport {
  std::string id;
  std::string status;
  Rat order{0};
  std::string result;  // match | mismatch | error
  std::string instanceLabel;
  std::optional<Rat> firstExponent;  // mismatch only
  std::optional<Rat> lhsCoeff, rhsCoeff;
  std::string errorKind;     // error only
  std::string errorMessage;  // error only
  double elapsedSeconds = 0;  // informational; excluded from JSON
};

// One line of JSON, fixed key order, no elapsed field: byte-identical for
// identical inputs.
std::string report_to_json(const CheckReport& report);

// Outcome of a modular-constant cross-check for one instance.
struct ModularCheck {
  std::string id;
  std::string label;
  Rat computed{0};
  Rat tabled{0};
  bool ok = false;
};

class Registry {
 public:
  // The data compiled into the library.
  static Registry embedded();
  static Registry from_file(const std::string& path);
  static Registry from_json_text(const std::string& text);

  const std::vector<Identity>& identities() const { return identities_; }
  const Identity& find(const std::string& id) const;  // UnknownId
  bool contains(const std::string& id) const;

  // classical 60, ct 20, everything else 40.
  static Rat default_order(const Identity& identity);

  // Evaluates both sides of every instance to `order` (in the printed,
  // plain-q variable) and compares exactly.  Evaluator failures are captured
  // as result == "error".
  CheckReport check(const Identity& identity, const Rat& order) const;

  // Checks the given identities (all when `ids` is empty, or those with one
  // of `statuses` when that is nonempty) at `order` or each identity's
  // default.  Reports are sorted by id regardless of execution order.
  std::vector<CheckReport> check_all(const std::vector<std::string>& ids,
                                     const std::vector<std::string>& statuses,
                                     const std::optional<Rat>& order,
                                     int parallel) const;

  // modular_constant(rhs, nomeScale) == tabled C, for every instance that
  // carries a tabled C.  Skips identities with modularCheck == false.
  // Evaluator errors propagate.
  std::vector<ModularCheck> modular_cross_check(const Identity& identity) const;

 private:
  std::vector<Identity> identities_;
};

// Structural perturbations of a product-grammar right side, for sensitivity
// tests: which == 0 adds 1 to the first term's scalar, 1 adds 1 to its
// q-power, 2 adds 1 to its first atom's power (falls back to the q-power for
// an atomless term).
std::string mutate_rhs(const std::string& rhs, int which);

namespace embedded {
extern const char* const kRegistryJson;
extern const char* const kTablesJson;
}  // namespace embedded

}  // namespace nahmforge
