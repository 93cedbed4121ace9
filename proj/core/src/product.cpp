#include "nahmforge/product.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "nahmforge/pochhammer.hpp"

namespace nahmforge {

QSeries theta_jtp_sum(const Monomial& z, const Rat& base, const Rat& prec) {
  if (base <= 0) raise("NonPositiveBase", "theta base must be positive");
  if (z.coeff == 0) return truncate(QSeries::one(), prec);
  // Term n: (-1)^n z.coeff^n q^(n*z.exponent + base*n(n-1)/2), n in Z.
  // Exponents grow quadratically in both directions; walk outward until both
  // sides exceed prec.
  QSeries sum = QSeries::zero_to(prec);
  auto expo = [&](std::int64_t n) {
    return z.exponent * n + base * Rat(Int(n) * Int(n - 1), 2);
  };
  auto coeff = [&](std::int64_t n) {
    unsigned k = static_cast<unsigned>(n < 0 ? -n : n);
    // z.coeff^|n| with a positive denominator; the two-argument rational
    // constructor rejects nonpositive denominators.
    Rat c(boost::multiprecision::pow(rat_num(z.coeff), k),
          boost::multiprecision::pow(rat_den(z.coeff), k));
    if (n < 0) c = Rat(1) / c;  // z.coeff is nonzero here
    if (n % 2 != 0) c = -c;
    return c;
  };
  for (int dir = 0; dir < 2; ++dir) {
    std::int64_t n = dir == 0 ? 0 : -1;
    std::int64_t step = dir == 0 ? 1 : -1;
    while (true) {
      Rat e = expo(n);
      // The exponent is a parabola in n; once past its vertex in the walking
      // direction every later exponent is strictly larger.
      bool climbing = expo(n + step) > e;
      if (e < prec)
        sum = add(sum, QSeries::monomial(coeff(n), e));
      else if (climbing)
        break;
      n += step;
      if (n > 1000000 || n < -1000000)
        raise("DivergentSeries", "theta sum failed to terminate");
    }
  }
  return truncate(sum, prec);
}

namespace {

QSeries eval_theta_w(const ProductAtom& at, const Rat& prec) {
  if (at.qa <= 0) raise("DomainError", "weighted theta needs positive quadratic term");
  QSeries sum = QSeries::zero_to(prec);
  // Exponent qa n^2 + qb n + qc >= prec for |n| beyond the parabola's
  // crossings; iterate outward from the vertex region.
  auto expo = [&](std::int64_t n) {
    return at.qa * Rat(Int(n) * Int(n)) + at.qb * n + at.qc;
  };
  for (int dir = 0; dir < 2; ++dir) {
    std::int64_t n = dir == 0 ? 0 : -1;
    std::int64_t step = dir == 0 ? 1 : -1;
    while (true) {
      Rat e = expo(n);
      bool climbing = expo(n + step) > e;
      if (e < prec) {
        Rat w = at.wa * n + at.wc;
        if (w != 0) sum = add(sum, QSeries::monomial(w, e));
      } else if (climbing) {
        break;
      }
      n += step;
      if (n > 1000000 || n < -1000000)
        raise("DivergentSeries", "weighted theta sum failed to terminate");
    }
  }
  return truncate(sum, prec);
}

// Evaluates one atom to at least `prec` absolute precision assuming it will
// be multiplied by partners with valuation >= `slack` (negative slack asks
// for more precision).
QSeries eval_atom(const ProductAtom& at, const Rat& prec) {
  QSeries s;
  switch (at.kind) {
    case ProductAtom::Kind::Jm:
      s = pochhammer_inf(Monomial(1, Rat(at.m)), Rat(at.m), prec);
      break;
    case ProductAtom::Kind::Jam: {
      QSeries f1 = pochhammer_inf(Monomial(1, Rat(at.a)), Rat(at.m), prec);
      QSeries f2 = pochhammer_inf(Monomial(1, Rat(at.m - at.a)), Rat(at.m), prec);
      QSeries f3 = pochhammer_inf(Monomial(1, Rat(at.m)), Rat(at.m), prec);
      s = truncate(mul(mul(f1, f2), f3), prec);
      break;
    }
    case ProductAtom::Kind::Poch:
      s = at.len ? pochhammer_finite(at.arg, at.base, *at.len)
                 : pochhammer_inf(at.arg, at.base, prec);
      break;
    case ProductAtom::Kind::ThetaW:
      s = eval_theta_w(at, prec);
      break;
    case ProductAtom::Kind::ThetaJ:
      s = theta_jtp_sum(at.arg, at.base, prec);
      break;
  }
  if (at.power == 1) return s;
  if (at.power >= 0) return pow_int(s, at.power);
  // Negative powers: make sure the inverse is attested to prec.
  auto v = s.min_exponent();
  if (!v) raise("ZeroLeadingTerm", "inverting an identically vanishing atom");
  Rat need = prec + (-at.power) * 2 * boost::multiprecision::abs(*v) + 1;
  QSeries fine = at.power == -1 && *v == 0 ? s : [&] {
    ProductAtom copy = at;
    copy.power = 1;
    return eval_atom(copy, need);
  }();
  return pow_int(truncate(fine, need), at.power);
}

QSeries eval_term(const ProductTerm& t, const Rat& prec) {
  // Evaluate with a working precision; Laurent atoms (negative valuations)
  // erode attested precision under multiplication, so retry with the honest
  // deficit until the tracked precision covers `prec`.
  Rat work = prec - t.qpower;
  for (int attempt = 0; attempt < 8; ++attempt) {
    QSeries acc = QSeries::monomial(t.scalar, t.qpower);
    for (const ProductAtom& at : t.atoms) {
      acc = mul(acc, eval_atom(at, work));
      if (acc.is_zero() && acc.is_exact()) return acc;
    }
    if (!acc.precision() || *acc.precision() >= prec) return truncate(acc, prec);
    Rat deficit = prec - *acc.precision();
    work += deficit + 1;
  }
  raise("DegreeNotAttested", "product term failed to reach requested precision");
}

}  // namespace

QSeries eval_product(const ProductExpr& expr, const Rat& prec) {
  if (expr.terms.empty()) raise("DomainError", "empty product expression");
  QSeries sum = QSeries::zero_to(prec);
  for (const ProductTerm& t : expr.terms) sum = add(sum, eval_term(t, prec));
  return sum;
}

// ---------------------------------------------------------------------------
// Modular constant
// ---------------------------------------------------------------------------

ModularData modular_constant(const ProductExpr& expr, const Rat& nomeScale) {
  if (nomeScale <= 0) raise("DomainError", "nome scale must be positive");
  if (expr.terms.empty()) raise("DomainError", "empty product expression");
  auto p2 = [](const Rat& x) { return x * x - x + Rat(1, 6); };
  std::optional<Rat> constantC;
  std::optional<Rat> weight;
  for (const ProductTerm& t : expr.terms) {
    Rat c = -t.qpower;
    Rat w = 0;
    for (const ProductAtom& at : t.atoms) {
      switch (at.kind) {
        case ProductAtom::Kind::Jm:
          c += Rat(at.power) * Rat(Int(at.m), 24);
          w += Rat(at.power, 2);
          break;
        case ProductAtom::Kind::Jam: {
          Rat am(Int(at.a), Int(at.m));
          c += Rat(at.power) * (Rat(Int(at.m), 24) + Rat(at.m) * p2(am) / 2);
          w += Rat(at.power, 2);
          break;
        }
        default:
          raise("RawPochhammerAtom",
                "modular constant is defined for J[m]/J[a,m] atoms only");
      }
    }
    c /= nomeScale;
    if (!constantC) {
      constantC = c;
      weight = w;
    } else if (*constantC != c || *weight != w) {
      raise("InconsistentTerms",
            "terms disagree: C " + rat_to_string(*constantC) + " vs " +
                rat_to_string(c) + ", weight " + rat_to_string(*weight) +
                " vs " + rat_to_string(w));
    }
  }
  return ModularData{*constantC, *weight};
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ProductExpr parse() {
    ProductExpr expr;
    skip_ws();
    bool negative = eat('-');
    expr.terms.push_back(parse_term(negative));
    skip_ws();
    while (!done()) {
      if (eat('+')) {
        expr.terms.push_back(parse_term(false));
      } else if (eat('-')) {
        expr.terms.push_back(parse_term(true));
      } else {
        fail("expected '+' or '-'");
      }
      skip_ws();
    }
    return expr;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    raise("SyntaxError",
          why + " at position " + std::to_string(pos_) + " in '" + text_ + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string take_while(bool (*pred)(char)) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  Rat parse_rational(bool allowSign) {
    skip_ws();
    std::size_t start = pos_;
    if (allowSign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
      ++pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    // Consume '/digits' only when the slash introduces a denominator, not a
    // division by the next factor (e.g. "3/J[2]").
    if (pos_ + 1 < text_.size() && text_[pos_] == '/' && is_digit(text_[pos_ + 1])) {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    }
    if (pos_ == start) fail("expected a rational number");
    return parse_rat(text_.substr(start, pos_ - start));
  }

  std::int64_t parse_int(bool allowSign) {
    Rat r = parse_rational(allowSign);
    if (!rat_is_int(r)) fail("expected an integer");
    return to_i64(rat_num(r));
  }

  // Parses a monomial argument inside brackets, up to ';' or ']'.
  Monomial parse_monomial_arg() {
    skip_ws();
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && (c == ';' || c == ']')) break;
      ++pos_;
    }
    if (pos_ == start) fail("expected a monomial");
    return parse_monomial(text_.substr(start, pos_ - start));
  }

  ProductTerm parse_term(bool negative) {
    ProductTerm term;
    if (negative) term.scalar = -1;
    bool dividing = false;
    while (true) {
      parse_factor(term, dividing);
      skip_ws();
      if (eat('*')) {
        dividing = false;
      } else if (eat('/')) {
        dividing = true;
      } else {
        break;
      }
    }
    return term;
  }

  void parse_factor(ProductTerm& term, bool dividing) {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a factor");
    char c = text_[pos_];
    if (is_digit(c)) {
      Rat r = parse_rational(false);
      if (dividing) {
        if (r == 0) raise("VanishingDenominator", "division by zero scalar");
        term.scalar /= r;
      } else {
        term.scalar *= r;
      }
      return;
    }
    if (c == '(') {
      // Parenthesized factor group: ( factor (('*'|'/') factor)* ).
      // Division distributes over the group: a/(x*y) divides by both, and
      // a/(x/y) divides by x and multiplies by y.
      expect('(');
      bool innerDiv = false;
      while (true) {
        parse_factor(term, dividing != innerDiv);
        skip_ws();
        if (eat('*')) {
          innerDiv = false;
        } else if (eat('/')) {
          innerDiv = true;
        } else {
          break;
        }
      }
      expect(')');
      return;
    }
    if (c == 'q') {
      ++pos_;
      Rat e = 1;
      if (eat('^')) {
        expect('(');
        e = parse_rational(true);
        expect(')');
      }
      term.qpower += dividing ? -e : e;
      return;
    }
    ProductAtom atom;
    if (text_.compare(pos_, 3, "TW[") == 0) {
      pos_ += 3;
      atom.kind = ProductAtom::Kind::ThetaW;
      atom.wa = parse_rational(true);
      expect(';');
      atom.wc = parse_rational(true);
      expect(';');
      atom.qa = parse_rational(true);
      expect(';');
      atom.qb = parse_rational(true);
      if (eat(';')) atom.qc = parse_rational(true);
      expect(']');
      if (atom.qa <= 0) raise("DomainError", "TW quadratic coefficient must be positive");
    } else if (text_.compare(pos_, 3, "TJ[") == 0) {
      pos_ += 3;
      atom.kind = ProductAtom::Kind::ThetaJ;
      atom.arg = parse_monomial_arg();
      expect(';');
      atom.base = parse_rational(true);
      expect(']');
      if (atom.base <= 0) raise("NonPositiveBase", "TJ base must be positive");
    } else if (c == 'J') {
      ++pos_;
      expect('[');
      std::int64_t first = parse_int(false);
      if (eat(',')) {
        atom.kind = ProductAtom::Kind::Jam;
        atom.a = first;
        atom.m = parse_int(false);
        if (!(atom.a > 0 && atom.a < atom.m))
          raise("DomainError", "J[a,m] requires 0 < a < m");
      } else {
        atom.kind = ProductAtom::Kind::Jm;
        atom.m = first;
        if (atom.m <= 0) raise("DomainError", "J[m] requires m > 0");
      }
      expect(']');
    } else if (c == 'P') {
      ++pos_;
      expect('[');
      atom.kind = ProductAtom::Kind::Poch;
      atom.arg = parse_monomial_arg();
      expect(';');
      atom.base = parse_rational(true);
      if (atom.base <= 0) raise("NonPositiveBase", "P base must be positive");
      if (eat(';')) {
        std::int64_t n = parse_int(true);
        if (n < 0) raise("NegativeLength", "P length must be nonnegative");
        atom.len = n;
      }
      expect(']');
    } else {
      fail("unrecognized factor");
    }
    if (eat('^')) atom.power = parse_int(true);
    if (dividing) atom.power = -atom.power;
    term.atoms.push_back(atom);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

int kind_rank(ProductAtom::Kind k) {
  switch (k) {
    case ProductAtom::Kind::Jm: return 0;
    case ProductAtom::Kind::Jam: return 1;
    case ProductAtom::Kind::Poch: return 2;
    case ProductAtom::Kind::ThetaJ: return 3;
    case ProductAtom::Kind::ThetaW: return 4;
  }
  return 5;
}

}  // namespace

ProductExpr parse_product(const std::string& text) {
  Parser p(text);
  ProductExpr e = p.parse();
  for (ProductTerm& t : e.terms) {
    std::stable_sort(t.atoms.begin(), t.atoms.end(),
                     [](const ProductAtom& x, const ProductAtom& y) {
                       return std::make_tuple(kind_rank(x.kind), x.m, x.a) <
                              std::make_tuple(kind_rank(y.kind), y.m, y.a);
                     });
  }
  return e;
}

std::string render_product(const ProductExpr& expr) {
  std::ostringstream os;
  bool firstTerm = true;
  for (const ProductTerm& t : expr.terms) {
    Rat s = t.scalar;
    bool negative = s < 0;
    Rat mag = negative ? Rat(-s) : s;
    if (firstTerm) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    firstTerm = false;
    std::vector<std::string> numer, denom;
    if (mag != 1 || (t.qpower == 0 && t.atoms.empty())) numer.push_back(rat_to_string(mag));
    if (t.qpower != 0) {
      std::string f = "q^(" + rat_to_string(t.qpower) + ")";
      numer.push_back(f);
    }
    for (const ProductAtom& at : t.atoms) {
      std::ostringstream a;
      switch (at.kind) {
        case ProductAtom::Kind::Jm: a << "J[" << at.m << "]"; break;
        case ProductAtom::Kind::Jam: a << "J[" << at.a << "," << at.m << "]"; break;
        case ProductAtom::Kind::Poch:
          a << "P[" << monomial_to_string(at.arg) << ";" << rat_to_string(at.base);
          if (at.len) a << ";" << *at.len;
          a << "]";
          break;
        case ProductAtom::Kind::ThetaW:
          a << "TW[" << rat_to_string(at.wa) << ";" << rat_to_string(at.wc) << ";"
            << rat_to_string(at.qa) << ";" << rat_to_string(at.qb);
          if (at.qc != 0) a << ";" << rat_to_string(at.qc);
          a << "]";
          break;
        case ProductAtom::Kind::ThetaJ:
          a << "TJ[" << monomial_to_string(at.arg) << ";" << rat_to_string(at.base)
            << "]";
          break;
      }
      std::int64_t p = at.power;
      bool inDenom = p < 0;
      std::int64_t mag2 = inDenom ? -p : p;
      if (mag2 != 1) a << "^" << mag2;
      (inDenom ? denom : numer).push_back(a.str());
    }
    if (numer.empty()) numer.push_back("1");
    for (std::size_t i = 0; i < numer.size(); ++i) {
      if (i) os << "*";
      os << numer[i];
    }
    if (!denom.empty()) {
      os << "/";
      if (denom.size() > 1) os << "(";
      for (std::size_t i = 0; i < denom.size(); ++i) {
        if (i) os << "*";
        os << denom[i];
      }
      if (denom.size() > 1) os << ")";
    }
  }
  return os.str();
}

}  // namespace nahmforge
