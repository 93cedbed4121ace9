#include "nahmforge/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace nahmforge {

// ---------------------------------------------------------------------------
// Rational helpers
// ---------------------------------------------------------------------------

Rat parse_rat(const std::string& text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    raise("SyntaxError", "bad rational '" + text + "': " + why);
  };
  if (text.empty()) fail("empty");
  bool negative = false;
  if (text[i] == '-' || text[i] == '+') {
    negative = text[i] == '-';
    ++i;
  }
  if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
    fail("expected digits");
  std::size_t numStart = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  Int num(text.substr(numStart, i - numStart));
  Int den = 1;
  if (i < text.size()) {
    if (text[i] != '/') fail("unexpected character");
    ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      fail("expected denominator digits");
    std::size_t denStart = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    den = Int(text.substr(denStart, i - denStart));
    if (den == 0) raise("VanishingDenominator", "zero denominator in '" + text + "'");
  }
  if (i != text.size()) fail("trailing characters");
  Rat r(num, den);
  return negative ? Rat(-r) : r;
}

std::string rat_to_string(const Rat& x) {
  std::ostringstream os;
  os << rat_num(x);
  if (rat_den(x) != 1) os << '/' << rat_den(x);
  return os.str();
}

Int rat_floor(const Rat& x) {
  Int n = rat_num(x), d = rat_den(x);
  Int q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

Int rat_ceil(const Rat& x) { return -rat_floor(-x); }

Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  Int g = boost::multiprecision::gcd(a, b);
  return boost::multiprecision::abs(a / g * b);
}

std::int64_t to_i64(const Int& x) {
  if (x > Int(INT64_MAX) || x < Int(INT64_MIN))
    raise("DomainError", "integer out of machine range");
  return x.convert_to<std::int64_t>();
}

Monomial monomial_inv(const Monomial& m) {
  if (m.coeff == 0) raise("VanishingDenominator", "inverse of zero monomial");
  return Monomial(Rat(1) / m.coeff, -m.exponent);
}

Monomial monomial_pow(const Monomial& m, std::int64_t n) {
  if (n < 0) return monomial_pow(monomial_inv(m), -n);
  Monomial r(1, 0);
  for (std::int64_t k = 0; k < n; ++k) r = r * m;
  return r;
}

Monomial parse_monomial(const std::string& text) {
  // Forms: RAT | [RAT '*'] SIGNED_Q, where SIGNED_Q is 'q', '-q', 'q^(RAT)',
  // '-q^(RAT)'.
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) raise("SyntaxError", "empty monomial");

  auto parseQ = [&](const std::string& t, Rat& expOut) -> bool {
    if (t == "q") {
      expOut = 1;
      return true;
    }
    if (t.rfind("q^(", 0) == 0 && t.size() > 4 && t.back() == ')') {
      expOut = parse_rat(t.substr(3, t.size() - 4));
      return true;
    }
    return false;
  };

  auto star = s.find('*');
  if (star != std::string::npos) {
    Rat c = parse_rat(s.substr(0, star));
    Rat e;
    if (!parseQ(s.substr(star + 1), e))
      raise("SyntaxError", "bad monomial '" + text + "'");
    return Monomial(c, e);
  }
  Rat e;
  if (parseQ(s, e)) return Monomial(1, e);
  if (s.size() > 1 && s[0] == '-' && parseQ(s.substr(1), e)) return Monomial(-1, e);
  return Monomial(parse_rat(s), 0);
}

std::string monomial_to_string(const Monomial& m) {
  if (m.coeff == 0) return "0";
  if (m.exponent == 0) return rat_to_string(m.coeff);
  std::string head;
  if (m.coeff == 1)
    head = "";
  else if (m.coeff == -1)
    head = "-";
  else
    head = rat_to_string(m.coeff) + "*";
  if (m.exponent == 1) return head + "q";
  return head + "q^(" + rat_to_string(m.exponent) + ")";
}

// ---------------------------------------------------------------------------
// QSeries
// ---------------------------------------------------------------------------

QSeries::QSeries() = default;

QSeries::QSeries(std::int64_t denomD, std::int64_t minExp, std::vector<Rat> coeffs,
                 std::optional<Rat> precision)
    : denomD_(denomD), minExp_(minExp), coeffs_(std::move(coeffs)),
      precision_(std::move(precision)) {
  if (denomD_ <= 0) raise("DomainError", "lattice denominator must be positive");
  normalize();
}

QSeries QSeries::one() { return monomial(Rat(1), Rat(0)); }
QSeries QSeries::q() { return monomial(Rat(1), Rat(1)); }

QSeries QSeries::monomial(const Rat& coeff, const Rat& exponent) {
  if (coeff == 0) return QSeries();
  Int den = rat_den(exponent);
  Int num = rat_num(exponent);
  return QSeries(to_i64(den), to_i64(num), {coeff}, std::nullopt);
}

QSeries QSeries::monomial(const Monomial& m) { return monomial(m.coeff, m.exponent); }

QSeries QSeries::zero_to(const Rat& precision) {
  return QSeries(1, 0, {}, precision);
}

void QSeries::normalize() {
  // Drop coefficients at or above the precision.
  if (precision_) {
    // k/denomD < precision  <=>  k < precision*denomD
    Rat bound = *precision_ * denomD_;
    Int cap = rat_ceil(bound);  // first k with k >= bound
    if (rat_is_int(bound)) cap = rat_num(bound);
    // keep k in [minExp, cap)
    Int keep = cap - minExp_;
    if (keep <= 0)
      coeffs_.clear();
    else if (keep < Int(static_cast<std::int64_t>(coeffs_.size())))
      coeffs_.resize(keep.convert_to<std::size_t>());
  }
  // Trim leading zeros.
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    minExp_ += static_cast<std::int64_t>(lead);
  }
  // Trim trailing zeros.
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) {
    minExp_ = 0;
    denomD_ = 1;
    return;
  }
  // Reduce the lattice: gcd of denomD, minExp and all nonzero strides.
  std::int64_t g = denomD_;
  g = std::gcd(g, minExp_ < 0 ? -minExp_ : minExp_);
  for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i)
    if (coeffs_[i] != 0) g = std::gcd(g, static_cast<std::int64_t>(i) == 0 ? g : static_cast<std::int64_t>(i));
  // Strides are offsets from minExp; combine with minExp and denom.
  if (g > 1) {
    std::vector<Rat> reduced;
    reduced.reserve(coeffs_.size() / static_cast<std::size_t>(g) + 1);
    for (std::size_t i = 0; i < coeffs_.size(); i += static_cast<std::size_t>(g))
      reduced.push_back(coeffs_[i]);
    // Verify no nonzero falls off-stride (guaranteed by gcd computation).
    coeffs_ = std::move(reduced);
    minExp_ /= g;
    denomD_ /= g;
  }
}

bool QSeries::is_zero() const {
  for (const Rat& c : coeffs_)
    if (c != 0) return false;
  return true;
}

std::optional<Rat> QSeries::min_exponent() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0)
      return Rat(Int(minExp_ + static_cast<std::int64_t>(i)), Int(denomD_));
  return std::nullopt;
}

std::optional<Rat> QSeries::max_exponent() const {
  for (std::size_t i = coeffs_.size(); i-- > 0;)
    if (coeffs_[i] != 0)
      return Rat(Int(minExp_ + static_cast<std::int64_t>(i)), Int(denomD_));
  return std::nullopt;
}

Rat QSeries::coeff(const Rat& exponent) const {
  if (precision_ && exponent >= *precision_)
    raise("DegreeNotAttested",
          "coefficient of q^" + rat_to_string(exponent) + " beyond precision q^" +
              rat_to_string(*precision_));
  Rat idx = exponent * denomD_;
  if (!rat_is_int(idx)) return Rat(0);
  Int k = rat_num(idx);
  Int off = k - minExp_;
  if (off < 0 || off >= Int(static_cast<std::int64_t>(coeffs_.size()))) return Rat(0);
  return coeffs_[off.convert_to<std::size_t>()];
}

std::vector<std::pair<Rat, Rat>> QSeries::items() const {
  std::vector<std::pair<Rat, Rat>> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0)
      out.emplace_back(Rat(Int(minExp_ + static_cast<std::int64_t>(i)), Int(denomD_)),
                       coeffs_[i]);
  return out;
}

std::string QSeries::dump() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : items()) {
    if (!first) os << '\n';
    first = false;
    os << rat_to_string(e) << ": " << rat_to_string(c);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

namespace {

std::optional<Rat> min_prec(const std::optional<Rat>& a, const std::optional<Rat>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

// Lowest stored exponent used for precision propagation.  Conservative: when
// the series has no nonzero term, 0 keeps the rule safe.
Rat effective_valuation(const QSeries& s) {
  auto v = s.min_exponent();
  return v ? *v : Rat(0);
}

}  // namespace

QSeries add(const QSeries& a, const QSeries& b) {
  std::optional<Rat> prec = min_prec(a.precision(), b.precision());
  std::int64_t D = std::lcm(a.denom(), b.denom());
  std::int64_t sa = D / a.denom(), sb = D / b.denom();
  if (a.raw().empty() && b.raw().empty()) return QSeries(1, 0, {}, prec);
  std::int64_t lo = INT64_MAX, hi = INT64_MIN;
  if (!a.raw().empty()) {
    lo = std::min(lo, a.min_index() * sa);
    hi = std::max(hi, (a.min_index() + static_cast<std::int64_t>(a.raw().size()) - 1) * sa);
  }
  if (!b.raw().empty()) {
    lo = std::min(lo, b.min_index() * sb);
    hi = std::max(hi, (b.min_index() + static_cast<std::int64_t>(b.raw().size()) - 1) * sb);
  }
  std::vector<Rat> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < a.raw().size(); ++i)
    if (a.raw()[i] != 0)
      out[static_cast<std::size_t>((a.min_index() + static_cast<std::int64_t>(i)) * sa - lo)] += a.raw()[i];
  for (std::size_t i = 0; i < b.raw().size(); ++i)
    if (b.raw()[i] != 0)
      out[static_cast<std::size_t>((b.min_index() + static_cast<std::int64_t>(i)) * sb - lo)] += b.raw()[i];
  return QSeries(D, lo, std::move(out), prec);
}

QSeries neg(const QSeries& a) { return mul_scalar(a, Rat(-1)); }

QSeries sub(const QSeries& a, const QSeries& b) { return add(a, neg(b)); }

QSeries mul_scalar(const QSeries& a, const Rat& c) {
  if (c == 0) return a.is_exact() ? QSeries() : QSeries::zero_to(*a.precision());
  std::vector<Rat> out(a.raw());
  for (Rat& x : out) x *= c;
  return QSeries(a.denom(), a.min_index(), std::move(out), a.precision());
}

QSeries mul(const QSeries& a, const QSeries& b) {
  // An exactly-zero factor annihilates everything, unknown tails included.
  if (a.is_exact() && a.is_zero()) return QSeries();
  if (b.is_exact() && b.is_zero()) return QSeries();
  // Precision rule: unknown coefficients of a (at/above Pa) meet coefficients
  // of b at or above its lowest stored exponent vb, contaminating exponents
  // from Pa + vb on; symmetrically for b.  Exact operands contribute nothing.
  std::optional<Rat> prec;
  if (a.precision()) {
    Rat p = *a.precision() + effective_valuation(b);
    prec = prec ? std::min(*prec, p) : p;
  }
  if (b.precision()) {
    Rat p = *b.precision() + effective_valuation(a);
    prec = prec ? std::min(*prec, p) : p;
  }
  if (a.is_zero() || b.is_zero()) {
    if (!prec) return QSeries();
    return QSeries::zero_to(*prec);
  }
  std::int64_t D = std::lcm(a.denom(), b.denom());
  std::int64_t sa = D / a.denom(), sb = D / b.denom();
  std::int64_t lo = a.min_index() * sa + b.min_index() * sb;
  std::int64_t hi = (a.min_index() + static_cast<std::int64_t>(a.raw().size()) - 1) * sa +
                    (b.min_index() + static_cast<std::int64_t>(b.raw().size()) - 1) * sb;
  // Cap the output range at the precision to avoid wasted work.
  if (prec) {
    Rat bound = *prec * D;
    Int cap = rat_ceil(bound);
    if (rat_is_int(bound)) cap = rat_num(bound);
    Int hiCap = cap - 1;
    if (hiCap < Int(lo)) {
      return QSeries::zero_to(*prec);
    }
    if (hiCap < Int(hi)) hi = hiCap.convert_to<std::int64_t>();
  }
  std::vector<Rat> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < a.raw().size(); ++i) {
    const Rat& ca = a.raw()[i];
    if (ca == 0) continue;
    std::int64_t ea = (a.min_index() + static_cast<std::int64_t>(i)) * sa;
    for (std::size_t j = 0; j < b.raw().size(); ++j) {
      const Rat& cb = b.raw()[j];
      if (cb == 0) continue;
      std::int64_t e = ea + (b.min_index() + static_cast<std::int64_t>(j)) * sb;
      if (e > hi) break;
      out[static_cast<std::size_t>(e - lo)] += ca * cb;
    }
  }
  return QSeries(D, lo, std::move(out), prec);
}

QSeries inv(const QSeries& a) {
  auto v = a.min_exponent();
  if (!v) raise("ZeroLeadingTerm", "cannot invert a series with no nonzero term");
  // Leading monomial c*q^v.
  Rat c = a.coeff(*v);
  // u = a/(c q^v) - 1 has positive valuation.
  bool monomialOnly = true;
  for (const auto& [e, co] : a.items()) {
    (void)co;
    if (e != *v) {
      monomialOnly = false;
      break;
    }
  }
  if (a.is_exact()) {
    if (monomialOnly) return QSeries::monomial(Rat(1) / c, -*v);
    raise("DomainError",
          "inverting an exact non-monomial series requires a precision; "
          "truncate first");
  }
  // Relative precision of the normalized series.
  Rat relPrec = *a.precision() - *v;
  if (relPrec <= 0)
    raise("ZeroLeadingTerm", "series has no attested leading term");

  // Work on the lattice of a: normalized u with u[0] = 1.
  std::int64_t D = a.denom();
  Rat vIdxR = *v * D;
  std::int64_t vIdx = to_i64(rat_num(vIdxR));  // v is on the lattice
  // Number of coefficients to produce: k/D < relPrec.
  Rat bound = relPrec * D;
  Int capI = rat_ceil(bound);
  if (rat_is_int(bound)) capI = rat_num(bound);
  std::int64_t n = to_i64(capI);
  if (n <= 0) raise("ZeroLeadingTerm", "empty attested range");

  // f[k] = coefficient of q^((vIdx+k)/D) in a / c  (f[0] = 1).
  std::vector<Rat> f(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    Int idx = Int(vIdx + k) - a.min_index();
    Rat x = 0;
    if (idx >= 0 && idx < Int(static_cast<std::int64_t>(a.raw().size())))
      x = a.raw()[idx.convert_to<std::size_t>()];
    f[static_cast<std::size_t>(k)] = x / c;
  }
  // g = 1/f by back substitution: sum_{j<=k} f[j] g[k-j] = [k==0].
  std::vector<Rat> g(static_cast<std::size_t>(n));
  g[0] = 1;
  // Track nonzero positions of f for sparse inner loops.
  std::vector<std::int64_t> fnz;
  for (std::int64_t j = 1; j < n; ++j)
    if (f[static_cast<std::size_t>(j)] != 0) fnz.push_back(j);
  for (std::int64_t k = 1; k < n; ++k) {
    Rat s = 0;
    for (std::int64_t j : fnz) {
      if (j > k) break;
      s += f[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(k - j)];
    }
    g[static_cast<std::size_t>(k)] = -s;
  }
  for (Rat& x : g) x /= c;
  // Result: exponents (-vIdx + k)/D, absolute precision relPrec - v.
  return QSeries(D, -vIdx, std::move(g), relPrec - *v);
}

QSeries inv(const QSeries& a, const Rat& prec) {
  if (a.is_exact()) {
    auto v = a.min_exponent();
    if (!v) raise("ZeroLeadingTerm", "cannot invert a series with no nonzero term");
    // To get absolute precision `prec` in the inverse, truncate the input at
    // prec + 2v (the inv rule maps precision P to P - 2v).
    return inv(truncate(a, prec + 2 * *v));
  }
  return inv(truncate(a, prec));
}

QSeries substitute_power(const QSeries& a, const Rat& s) {
  if (s <= 0) raise("NonPositivePower", "substitution exponent must be positive");
  std::optional<Rat> prec;
  if (a.precision()) prec = *a.precision() * s;
  // New exponents: (k/D)*s = k*num(s) / (D*den(s)).
  Int num = rat_num(s), den = rat_den(s);
  Int newD = Int(a.denom()) * den;
  std::int64_t D = to_i64(newD);
  if (a.raw().empty()) return QSeries(1, 0, {}, prec);
  // Indices scale by num: k -> k*num.
  std::int64_t n = to_i64(num);
  std::int64_t lo = a.min_index() * n;
  std::vector<Rat> out(static_cast<std::size_t>((static_cast<std::int64_t>(a.raw().size()) - 1) * n + 1));
  for (std::size_t i = 0; i < a.raw().size(); ++i)
    if (a.raw()[i] != 0)
      out[i * static_cast<std::size_t>(n)] = a.raw()[i];
  return QSeries(D, lo, std::move(out), prec);
}

QSeries truncate(const QSeries& a, const Rat& prec) {
  std::optional<Rat> p = min_prec(a.precision(), prec);
  return QSeries(a.denom(), a.min_index(), a.raw(), p);
}

QSeries pow_int(const QSeries& a, std::int64_t n) {
  if (n < 0) return pow_int(inv(a), -n);
  QSeries result = QSeries::one();
  QSeries base = a;
  std::int64_t e = n;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  // Preserve the precision floor of the inputs for n==0 on inexact input.
  if (n == 0 && a.precision()) result = truncate(result, *a.precision());
  return result;
}

std::optional<Rat> first_difference(const QSeries& a, const QSeries& b) {
  std::optional<Rat> prec = min_prec(a.precision(), b.precision());
  QSeries d = sub(a, b);
  auto v = d.min_exponent();
  if (!v) return std::nullopt;
  if (prec && *v >= *prec) return std::nullopt;  // difference beyond attested range
  return v;
}

bool equal_to_precision(const QSeries& a, const QSeries& b, const Rat& prec) {
  auto pa = a.precision(), pb = b.precision();
  if (pa && *pa < prec)
    raise("DegreeNotAttested", "lhs attested only to q^" + rat_to_string(*pa));
  if (pb && *pb < prec)
    raise("DegreeNotAttested", "rhs attested only to q^" + rat_to_string(*pb));
  auto d = first_difference(truncate(a, prec), truncate(b, prec));
  return !d.has_value();
}

}  // namespace nahmforge
