#include "saffine/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <utility>

#include "saffine/errors.hpp"

namespace saffine {

MultiPoly::MultiPoly(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InputError("polynomial needs at least one variable");
}

MultiPoly MultiPoly::constant(std::size_t dim, const Rational& value) {
  MultiPoly p(dim);
  p.add_term(Exponent(dim, 0), value);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InputError("variable index out of range");
  MultiPoly p(dim);
  Exponent e(dim, 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

MultiPoly MultiPoly::linear_form(std::span<const Rational> coeffs, const Rational& offset) {
  MultiPoly p(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    Exponent e(coeffs.size(), 0);
    e[j] = 1;
    p.add_term(e, coeffs[j]);
  }
  p.add_term(Exponent(coeffs.size(), 0), offset);
  return p;
}

int MultiPoly::degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  return best;
}

Rational MultiPoly::coefficient(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponent& e, const Rational& coeff) {
  if (e.size() != dim_) throw InputError("exponent length does not match polynomial dimension");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  if (other.dim_ != dim_) throw InputError("polynomial sum: dimension mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  if (other.dim_ != dim_) throw InputError("polynomial difference: dimension mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Rational MultiPoly::evaluate(const QVector& x) const {
  if (x.size() != dim_) throw InputError("evaluate: point has wrong dimension");
  Rational total = 0, term;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < dim_; ++i)
      if (e[i] != 0) term *= power(x[i], e[i]);
    total += term;
  }
  return total;
}

double MultiPoly::evaluate(std::span<const double> x) const {
  if (x.size() != dim_) throw InputError("evaluate: point has wrong dimension");
  double total = 0;
  for (const auto& [e, c] : terms_) {
    double term = to_double(c);
    for (std::size_t i = 0; i < dim_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) term *= x[i];
    total += term;
  }
  return total;
}

MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.dim() != b.dim()) throw InputError("polynomial product: dimension mismatch");
  MultiPoly out(a.dim());
  Exponent e(a.dim());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiPoly pow(const MultiPoly& p, unsigned k) {
  MultiPoly out = MultiPoly::constant(p.dim(), 1);
  for (unsigned i = 0; i < k; ++i) out = out * p;
  return out;
}

MultiPoly compose_affine(const MultiPoly& p, const AffineMap& f) {
  if (p.dim() != f.dim()) throw InputError("compose_affine: dimension mismatch");
  const std::size_t n = p.dim();
  std::vector<unsigned> max_exp(n, 0);
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < n; ++i) max_exp[i] = std::max(max_exp[i], e[i]);

  // powers[i][k] = (f(x))_i^k
  std::vector<std::vector<MultiPoly>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    const QVector row = f.linear().row(i);
    const MultiPoly form = MultiPoly::linear_form(row, f.translation()[i]);
    powers[i].push_back(MultiPoly::constant(n, 1));
    for (unsigned k = 1; k <= max_exp[i]; ++k) powers[i].push_back(powers[i].back() * form);
  }

  MultiPoly out(n);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly term = MultiPoly::constant(n, c);
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] != 0) term = term * powers[i][e[i]];
    out += term;
  }
  return out;
}

std::optional<Rational> scaling_constant(const MultiPoly& p, const AffineMap& f) {
  if (p.is_zero()) throw InputError("scaling_constant: zero polynomial");
  const MultiPoly q = compose_affine(p, f);
  const auto& [e0, c0] = *p.terms().begin();
  const Rational ratio = q.coefficient(e0) / c0;
  if (q == p * ratio) return ratio;
  return std::nullopt;
}

std::optional<ScalingCertificate> certify_scaling_factor(const MultiPoly& p, const AffineMap& f) {
  if (determinant(f.linear()) == 0) throw InputError("scaling factor must be invertible");
  if (!is_contractive(f).contractive) throw InputError("scaling factor must be strictly contractive");
  auto c = scaling_constant(p, f);
  if (!c) return std::nullopt;
  return ScalingCertificate{f, *c, p.evaluate(fixed_point(f))};
}

bool is_self_affine_pair(const MultiPoly& p, const AffineMap& f, const AffineMap& g) {
  const auto cf = certify_scaling_factor(p, f);
  const auto cg = certify_scaling_factor(p, g);
  return cf && cg && fixed_point(f) != fixed_point(g);
}

namespace {

std::string word_string(const std::vector<std::size_t>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + std::to_string(w[i]);
  return s;
}

}  // namespace

FixedPointSurfaceReport verify_fixed_points_on_surface(const MultiPoly& p, std::span<const AffineMap> maps,
                                                       std::size_t depth) {
  std::vector<Rational> letter_constants;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto cert = certify_scaling_factor(p, maps[i]);
    if (!cert) throw InputError("map " + std::to_string(i) + " is not a scaling factor for P");
    letter_constants.push_back(cert->constant);
  }

  struct Node {
    std::vector<std::size_t> word;
    AffineMap map;
    Rational product;
  };
  FixedPointSurfaceReport report;
  std::vector<Node> level;
  level.reserve(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) level.push_back({{i}, maps[i], letter_constants[i]});

  for (std::size_t len = 1; len <= depth && !level.empty(); ++len) {
    std::vector<Node> next;
    for (const auto& node : level) {
      WordRecord rec;
      rec.word = node.word;
      rec.fixed_point = fixed_point(node.map);
      rec.value = p.evaluate(rec.fixed_point);
      const auto c = scaling_constant(p, node.map);
      rec.constant = c.value_or(0);
      const std::string w = word_string(node.word);
      rec.ok = true;
      if (!c) {
        report.violations.push_back("word " + w + ": composed map is not a scaling factor");
        rec.ok = false;
      } else {
        if (*c != node.product) {
          report.violations.push_back("word " + w + ": C_w = " + to_string(*c) + " but product of letters is " +
                                      to_string(node.product));
          rec.ok = false;
        }
        if (abs_value(*c) >= 1) {
          report.violations.push_back("word " + w + ": |C_w| = " + to_string(abs_value(*c)) + " is not below 1");
          rec.ok = false;
        }
      }
      if (rec.value != 0) {
        report.violations.push_back("word " + w + ": P(fixed point) = " + to_string(rec.value));
        rec.ok = false;
      }
      report.words.push_back(std::move(rec));
      ++report.words_checked;
      if (len < depth)
        for (std::size_t i = 0; i < maps.size(); ++i) {
          auto word = node.word;
          word.push_back(i);
          next.push_back({std::move(word), compose(node.map, maps[i]), node.product * letter_constants[i]});
        }
    }
    level = std::move(next);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Text form.

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  struct Term {
    Rational coeff = 1;
    std::vector<std::pair<std::size_t, unsigned>> factors;  // (variable index, exponent)
  };

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip_space();
    if (at_end()) throw InputError("empty polynomial");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
    }
    while (true) {
      Term t = parse_term();
      if (negative) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      skip_space();
      if (at_end()) break;
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      negative = op == '-';
    }
    return terms;
  }

 private:
  Term parse_term() {
    Term t;
    bool any = false;
    while (true) {
      skip_space();
      if (at_end()) break;
      const char ch = peek();
      if (ch == '*') {
        if (!any) fail("term starts with '*'");
        get();
        skip_space();
        if (at_end() || (peek() != 'x' && !std::isdigit(static_cast<unsigned char>(peek()))))
          fail("expected a factor after '*'");
        continue;
      }
      if (ch == 'x' || ch == 'X') {
        get();
        const unsigned long idx = read_uint("variable index");
        if (idx == 0) fail("variables are numbered from x1");
        unsigned long exp = 1;
        skip_space();
        if (!at_end() && peek() == '^') {
          get();
          skip_space();
          if (!at_end() && peek() == '-') fail("negative exponent");
          exp = read_uint("exponent");
        }
        t.factors.emplace_back(idx - 1, static_cast<unsigned>(exp));
        any = true;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::string lit;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) lit += get();
        skip_space();
        if (!at_end() && peek() == '/') {
          lit += get();
          skip_space();
          while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) lit += get();
        }
        if (!at_end() && (peek() == '.' || peek() == 'e' || peek() == 'E')) fail("decimal coefficients are not accepted");
        t.coeff *= parse_rational(lit);
        any = true;
        continue;
      }
      break;
    }
    if (!any) fail("expected a term");
    return t;
  }

  unsigned long read_uint(const char* what) {
    skip_space();
    std::string digits;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
    if (digits.empty() || digits.size() > 9) fail(std::string("bad ") + what);
    return std::stoul(digits);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() { return text_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_polynomial(std::string_view text, std::size_t dim) {
  const auto terms = PolyParser(text).parse();
  std::size_t used = 1;
  for (const auto& t : terms)
    for (const auto& [idx, exp] : t.factors) used = std::max(used, idx + 1);
  if (dim == 0) dim = used;
  if (used > dim) throw InputError("polynomial uses x" + std::to_string(used) + " but dimension is " + std::to_string(dim));
  MultiPoly p(dim);
  for (const auto& t : terms) {
    Exponent e(dim, 0);
    for (const auto& [idx, exp] : t.factors) e[idx] += exp;
    p.add_term(e, t.coeff);
  }
  return p;
}

std::string to_string(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  // Graded order: higher total degree first, then lexicographically larger.
  std::vector<std::pair<Exponent, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const auto da = std::accumulate(a.first.begin(), a.first.end(), 0u);
    const auto db = std::accumulate(b.first.begin(), b.first.end(), 0u);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    const bool neg = c < 0;
    const Rational mag = abs_value(c);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += " ";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << to_string(mag);
    } else if (mag == 1) {
      os << mono;
    } else {
      os << to_string(mag) << "*" << mono;
    }
  }
  return os.str();
}

}  // namespace saffine
