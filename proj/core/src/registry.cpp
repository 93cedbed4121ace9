#include "nahmforge/registry.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "nahmforge/bailey.hpp"
#include "nahmforge/ctext.hpp"
#include "nahmforge/pochhammer.hpp"

namespace nahmforge {

namespace {

using nlohmann::json;

// --- JSON field helpers -----------------------------------------------------

const json& req(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end())
    raise("SyntaxError", "missing field '" + std::string(key) + "' in " + where);
  return *it;
}

Rat jrat(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  raise("SyntaxError", "expected rational (string) in " + where);
}

Rat jrat_or(const json& j, const char* key, const Rat& dflt,
            const std::string& where) {
  auto it = j.find(key);
  return it == j.end() ? dflt : jrat(*it, where + "." + key);
}

RatVector jvec(const json& j, const std::string& where) {
  if (!j.is_array()) raise("SyntaxError", "expected array in " + where);
  RatVector v;
  for (const auto& e : j) v.push_back(jrat(e, where));
  return v;
}

RatMatrix jmat(const json& j, const std::string& where) {
  if (!j.is_array()) raise("SyntaxError", "expected matrix in " + where);
  std::vector<RatVector> rows;
  for (const auto& r : j) rows.push_back(jvec(r, where));
  return RatMatrix(rows);
}

Monomial jmono(const json& j, const std::string& where) {
  if (j.is_number_integer())
    return Monomial(Rat(j.get<std::int64_t>()), Rat(0));
  if (j.is_string()) return parse_monomial(j.get<std::string>());
  raise("SyntaxError", "expected monomial string in " + where);
}

std::vector<Monomial> jmonos(const json& j, const std::string& where) {
  if (!j.is_array()) raise("SyntaxError", "expected array in " + where);
  std::vector<Monomial> v;
  for (const auto& e : j) v.push_back(jmono(e, where));
  return v;
}

PochFactor jfactor(const json& j, const std::string& where) {
  PochFactor f;
  f.argCoeff = jrat_or(j, "arg_coeff", Rat(1), where);
  f.argExp0 = jrat_or(j, "arg_exp0", Rat(0), where);
  if (j.contains("arg_expn")) f.argExpN = jvec(j["arg_expn"], where + ".arg_expn");
  f.base = jrat_or(j, "base", Rat(1), where);
  f.infinite = j.value("infinite", false);
  f.len0 = jrat_or(j, "len0", Rat(0), where);
  if (j.contains("lenn")) f.lenN = jvec(j["lenn"], where + ".lenn");
  return f;
}

SumSpec jsumspec(const json& j, const std::string& where) {
  SumSpec s;
  s.indices = req(j, "indices", where).get<std::size_t>();
  s.scale = jrat_or(j, "scale", Rat(1), where);
  for (const auto& r : req(j, "quad", where))
    s.quad.push_back(jvec(r, where + ".quad"));
  s.linear = jvec(req(j, "linear", where), where + ".linear");
  s.constant = jrat_or(j, "constant", Rat(0), where);
  if (j.contains("numer"))
    for (const auto& f : j["numer"]) s.numer.push_back(jfactor(f, where));
  if (j.contains("denom"))
    for (const auto& f : j["denom"]) s.denom.push_back(jfactor(f, where));
  return s;
}

std::vector<std::size_t> jperm(const json& j, const std::string& where) {
  std::vector<std::size_t> p;
  for (const auto& e : j) p.push_back(e.get<std::size_t>());
  std::vector<bool> seen(p.size(), false);
  for (std::size_t v : p) {
    if (v >= p.size() || seen[v])
      raise("SyntaxError", "invalid permutation in " + where);
    seen[v] = true;
  }
  return p;
}

RegInstance parse_instance(const std::string& kind, const json& j,
                           const Rat& identityNome, const std::string& where) {
  RegInstance ins;
  ins.label = j.value("label", "");
  ins.rhs = j.value("rhs", "");
  ins.nomeScale = jrat_or(j, "nome_scale", identityNome, where);
  if (ins.nomeScale <= 0)
    raise("SyntaxError", "nome scale must be positive in " + where);
  if (j.contains("table_c")) ins.tableC = jrat(j["table_c"], where + ".table_c");

  const json& lhs = req(j, "lhs", where);
  if (kind == "nahm") {
    NahmTriple t;
    t.A = jmat(req(lhs, "A", where), where + ".A");
    if (lhs.contains("B"))
      t.B = jvec(lhs["B"], where + ".B");
    else
      t.B.assign(t.A.rank(), Rat(0));
    t.C = jrat_or(lhs, "C", Rat(0), where);
    ins.triple = t;
    ins.includeC = lhs.value("include_c", false);
    if (lhs.contains("args")) ins.args = jmonos(lhs["args"], where + ".args");
  } else if (kind == "sumspec") {
    ins.sum = jsumspec(lhs, where);
  } else if (kind == "product") {
    ins.lhsProduct = req(lhs, "product", where).get<std::string>();
  } else if (kind == "hyper") {
    ins.hyperNumer = jmonos(req(lhs, "numer", where), where + ".numer");
    ins.hyperDenom = jmonos(req(lhs, "denom", where), where + ".denom");
    ins.hyperBase = jrat_or(lhs, "base", Rat(1), where);
    ins.hyperZ = jmono(req(lhs, "z", where), where + ".z");
  } else if (kind == "bailey") {
    ins.chain = req(lhs, "chain", where).get<std::string>();
    if (lhs.contains("u")) ins.chainU = jmono(lhs["u"], where + ".u");
  } else if (kind == "ct") {
    ins.ctArgs = jmonos(req(lhs, "args", where), where + ".args");
    if (ins.ctArgs->size() != 4)
      raise("SyntaxError", "ct lhs needs exactly 4 arguments in " + where);
    NahmTriple t;
    t.A = jmat(req(lhs, "A", where), where + ".A");
    t.B.assign(t.A.rank(), Rat(0));
    ins.triple = t;
  } else if (kind == "symmetry") {
    NahmTriple t;
    t.A = jmat(req(lhs, "A", where), where + ".A");
    t.B.assign(t.A.rank(), Rat(0));
    ins.triple = t;
    ins.args = jmonos(req(lhs, "args", where), where + ".args");
    ins.perm = jperm(req(lhs, "perm", where), where + ".perm");
    if (ins.perm->size() != t.A.rank() || ins.args.size() != t.A.rank())
      raise("SyntaxError", "rank mismatch in " + where);
  } else {
    raise("SyntaxError", "unknown identity kind '" + kind + "' in " + where);
  }
  return ins;
}

// --- per-kind evaluation ----------------------------------------------------

QSeries in_plain_q(const QSeries& s, const Rat& nomeScale) {
  return nomeScale == 1 ? s : substitute_power(s, nomeScale);
}

QSeries nahm_instance_series(const RegInstance& ins,
                             const std::vector<Monomial>& args,
                             const Rat& order) {
  NahmTriple t = *ins.triple;
  if (!args.empty()) t = nahm_from_F(args, t.A, t.B, ins.nomeScale, t.C);
  QSeries s = nahm_sum(t, ins.includeC, order / ins.nomeScale);
  return in_plain_q(s, ins.nomeScale);
}

struct InstanceOutcome {
  bool match = true;
  std::string detail;  // non-series defect (bp_check, ct stage name)
  std::optional<Rat> firstExponent;
  std::optional<Rat> lhsCoeff, rhsCoeff;
};

InstanceOutcome compare_series(const QSeries& lhs, const QSeries& rhs,
                               const Rat& order, const std::string& detail) {
  QSeries a = truncate(lhs, order);
  QSeries b = truncate(rhs, order);
  InstanceOutcome out;
  if (auto d = first_difference(a, b)) {
    out.match = false;
    out.detail = detail;
    out.firstExponent = *d;
    out.lhsCoeff = a.coeff(*d);
    out.rhsCoeff = b.coeff(*d);
  }
  return out;
}

InstanceOutcome check_instance(const std::string& kind, const RegInstance& ins,
                               const Rat& order) {
  if (kind == "bailey") {
    // Negative-valuation dips in intermediate alpha/beta terms are bounded by
    // a few q-powers for the chains in the registry; pad the working
    // precision accordingly.
    BaileyChain chain = bailey_chain(*ins.chain, order + 8, ins.chainU);
    for (std::size_t s = 0; s < chain.stages.size(); ++s) {
      if (auto bad = bp_check(chain.stages[s], 8)) {
        InstanceOutcome out;
        out.match = false;
        out.detail = "pair definition fails at stage " + std::to_string(s) +
                     ", n = " + std::to_string(*bad);
        return out;
      }
    }
    const BaileyPair& last = chain.stages.back();
    if (auto d = bp_limit_identity(last)) {
      InstanceOutcome out;
      out.match = false;
      out.detail = "limit identity fails";
      out.firstExponent = *d;
      return out;
    }
    QSeries lhs = bp_limit_beta_sum(last);
    QSeries rhs = eval_product(parse_product(ins.rhs), order);
    return compare_series(lhs, rhs, order, "closed form");
  }

  if (kind == "ct") {
    const auto& a = *ins.ctArgs;
    QSeries direct = nahm_instance_series(ins, a, order);
    QSeries single = ct_f_eval(a[0], a[1], a[2], a[3], order);
    InstanceOutcome out =
        compare_series(single, direct, order, "single constant-term layer");
    if (!out.match) return out;
    QSeries dbl = ct_f_eval_double(a[0], a[1], a[2], a[3], order);
    return compare_series(dbl, direct, order, "double constant-term layer");
  }

  if (kind == "symmetry") {
    const auto& perm = *ins.perm;
    std::vector<Monomial> permuted(ins.args.size());
    for (std::size_t i = 0; i < perm.size(); ++i) permuted[i] = ins.args[perm[i]];
    QSeries lhs = nahm_instance_series(ins, ins.args, order);
    QSeries rhs = nahm_instance_series(ins, permuted, order);
    return compare_series(lhs, rhs, order, "permuted arguments");
  }

  QSeries lhs;
  if (kind == "nahm") {
    lhs = nahm_instance_series(ins, ins.args, order);
  } else if (kind == "sumspec") {
    lhs = in_plain_q(eval_sum_spec(*ins.sum, order / ins.nomeScale),
                     ins.nomeScale);
  } else if (kind == "product") {
    lhs = eval_product(parse_product(*ins.lhsProduct), order);
  } else if (kind == "hyper") {
    lhs = hyper_phi(*ins.hyperNumer, *ins.hyperDenom, ins.hyperBase,
                    *ins.hyperZ, order);
  } else {
    raise("DomainError", "unhandled identity kind '" + kind + "'");
  }
  QSeries rhs = eval_product(parse_product(ins.rhs), order);
  return compare_series(lhs, rhs, order, "");
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace

std::string report_to_json(const CheckReport& r) {
  std::ostringstream os;
  os << "{\"id\":\"" << json_escape(r.id) << "\",\"status\":\""
     << json_escape(r.status) << "\",\"order\":\"" << rat_to_string(r.order)
     << "\",\"result\":\"" << r.result << "\"";
  if (!r.instanceLabel.empty())
    os << ",\"instance\":\"" << json_escape(r.instanceLabel) << "\"";
  if (r.firstExponent)
    os << ",\"first_exponent\":\"" << rat_to_string(*r.firstExponent) << "\"";
  if (r.lhsCoeff) os << ",\"lhs\":\"" << rat_to_string(*r.lhsCoeff) << "\"";
  if (r.rhsCoeff) os << ",\"rhs\":\"" << rat_to_string(*r.rhsCoeff) << "\"";
  if (!r.errorKind.empty()) {
    os << ",\"error\":\"" << json_escape(r.errorKind) << "\",\"message\":\""
       << json_escape(r.errorMessage) << "\"";
  }
  os << "}";
  return os.str();
}

Registry Registry::embedded() { return from_json_text(embedded::kRegistryJson); }

Registry Registry::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise("SyntaxError", "cannot open registry file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

Registry Registry::from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    raise("SyntaxError", std::string("registry JSON: ") + e.what());
  }
  if (!root.is_array()) raise("SyntaxError", "registry JSON must be an array");

  Registry reg;
  for (const auto& j : root) {
    Identity idn;
    idn.id = req(j, "id", "identity").get<std::string>();
    const std::string where = "identity '" + idn.id + "'";
    idn.status = req(j, "status", where).get<std::string>();
    if (idn.status != "classical" && idn.status != "proved" &&
        idn.status != "conjectural")
      raise("SyntaxError", "bad status in " + where);
    idn.source = j.value("source", "");
    idn.kind = req(j, "kind", where).get<std::string>();
    idn.modularCheck = j.value("modular_check", true);
    idn.tableExample = j.value("table_example", "");
    Rat nome = jrat_or(j, "nome_scale", Rat(1), where);
    const json& insts = req(j, "instances", where);
    if (!insts.is_array() || insts.empty())
      raise("SyntaxError", "instances must be a nonempty array in " + where);
    for (const auto& ij : insts)
      idn.instances.push_back(parse_instance(idn.kind, ij, nome, where));
    reg.identities_.push_back(std::move(idn));
  }
  std::sort(reg.identities_.begin(), reg.identities_.end(),
            [](const Identity& a, const Identity& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < reg.identities_.size(); ++i)
    if (reg.identities_[i - 1].id == reg.identities_[i].id)
      raise("SyntaxError", "duplicate identity id: " + reg.identities_[i].id);
  return reg;
}

const Identity& Registry::find(const std::string& id) const {
  for (const auto& idn : identities_)
    if (idn.id == id) return idn;
  raise("UnknownId", "no identity named '" + id + "'");
}

bool Registry::contains(const std::string& id) const {
  for (const auto& idn : identities_)
    if (idn.id == id) return true;
  return false;
}

Rat Registry::default_order(const Identity& identity) {
  if (identity.kind == "ct") return Rat(20);
  if (identity.status == "classical") return Rat(60);
  return Rat(40);
}

CheckReport Registry::check(const Identity& identity, const Rat& order) const {
  CheckReport rep;
  rep.id = identity.id;
  rep.status = identity.status;
  rep.order = order;
  rep.result = "match";
  auto t0 = std::chrono::steady_clock::now();
  for (const RegInstance& ins : identity.instances) {
    try {
      InstanceOutcome out = check_instance(identity.kind, ins, order);
      if (!out.match) {
        rep.result = "mismatch";
        rep.instanceLabel = ins.label.empty()
                                ? out.detail
                                : (out.detail.empty()
                                       ? ins.label
                                       : ins.label + ": " + out.detail);
        rep.firstExponent = out.firstExponent;
        rep.lhsCoeff = out.lhsCoeff;
        rep.rhsCoeff = out.rhsCoeff;
        break;
      }
    } catch (const Error& e) {
      rep.result = "error";
      rep.instanceLabel = ins.label;
      rep.errorKind = e.kind();
      rep.errorMessage = e.what();
      break;
    }
  }
  rep.elapsedSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

std::vector<CheckReport> Registry::check_all(
    const std::vector<std::string>& ids,
    const std::vector<std::string>& statuses, const std::optional<Rat>& order,
    int parallel) const {
  std::vector<const Identity*> sel;
  if (!ids.empty()) {
    for (const auto& id : ids) sel.push_back(&find(id));
    std::sort(sel.begin(), sel.end(),
              [](const Identity* a, const Identity* b) { return a->id < b->id; });
  } else {
    for (const auto& idn : identities_) {
      if (!statuses.empty() &&
          std::find(statuses.begin(), statuses.end(), idn.status) ==
              statuses.end())
        continue;
      sel.push_back(&idn);
    }
  }

  std::vector<CheckReport> out(sel.size());
  auto work = [&](std::size_t i) {
    const Identity& idn = *sel[i];
    out[i] = check(idn, order ? *order : default_order(idn));
  };
  if (parallel <= 1 || sel.size() <= 1) {
    for (std::size_t i = 0; i < sel.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto runner = [&] {
      for (std::size_t i = next.fetch_add(1); i < sel.size();
           i = next.fetch_add(1))
        work(i);
    };
    std::vector<std::thread> pool;
    int n = std::min<int>(parallel, static_cast<int>(sel.size()));
    for (int t = 0; t < n; ++t) pool.emplace_back(runner);
    for (auto& t : pool) t.join();
  }
  return out;
}

std::vector<ModularCheck> Registry::modular_cross_check(
    const Identity& identity) const {
  std::vector<ModularCheck> out;
  if (!identity.modularCheck) return out;
  for (const RegInstance& ins : identity.instances) {
    if (!ins.tableC || ins.rhs.empty()) continue;
    ModularData md = modular_constant(parse_product(ins.rhs), ins.nomeScale);
    ModularCheck mc;
    mc.id = identity.id;
    mc.label = ins.label;
    mc.computed = md.constantC;
    mc.tabled = *ins.tableC;
    mc.ok = mc.computed == mc.tabled;
    out.push_back(mc);
  }
  return out;
}

std::string mutate_rhs(const std::string& rhs, int which) {
  ProductExpr e = parse_product(rhs);
  if (e.terms.empty()) raise("DomainError", "cannot mutate an empty expression");
  ProductTerm& t = e.terms.front();
  if (which == 0) {
    t.scalar += 1;
  } else if (which == 1) {
    t.qpower += 1;
  } else if (t.atoms.empty()) {
    t.qpower += 1;
  } else {
    t.atoms.front().power += 1;
  }
  return render_product(e);
}

}  // namespace nahmforge
