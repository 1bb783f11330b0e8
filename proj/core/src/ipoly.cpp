#include "hyperpts/ipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hyperpts {

IPoly::IPoly(std::vector<Int> low_to_high) : coeffs_(std::move(low_to_high)) { trim(); }

IPoly::IPoly(std::initializer_list<long> low_to_high) {
  for (long c : low_to_high) coeffs_.emplace_back(c);
  trim();
}

IPoly IPoly::constant(const Int& c) { return IPoly(std::vector<Int>{c}); }

IPoly IPoly::monomial(const Int& c, int degree) {
  std::vector<Int> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return IPoly(std::move(v));
}

IPoly IPoly::linear_root(const Int& r) { return IPoly(std::vector<Int>{-r, Int(1)}); }

IPoly IPoly::from_leading_first(const std::vector<Int>& coeffs) {
  return IPoly(std::vector<Int>(coeffs.rbegin(), coeffs.rend()));
}

void IPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Int& IPoly::lc() const {
  require(!coeffs_.empty(), "leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Int IPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return Int(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

Int IPoly::operator()(const Int& x) const {
  Int r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

Rat IPoly::operator()(const Rat& x) const {
  Rat r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + Rat(*it);
  return r;
}

Int IPoly::homogeneous(const Int& a, const Int& b, int n) const {
  require(n >= degree(), "homogenizing degree below polynomial degree");
  std::vector<Int> bp(static_cast<std::size_t>(n) + 1);
  bp[0] = 1;
  for (int i = 1; i <= n; ++i) bp[static_cast<std::size_t>(i)] = bp[static_cast<std::size_t>(i) - 1] * b;
  Int r = 0;
  for (int i = degree(); i >= 0; --i) r = r * a + coeffs_[static_cast<std::size_t>(i)] * bp[static_cast<std::size_t>(n - i)];
  return r;
}

IPoly IPoly::derivative() const {
  std::vector<Int> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return IPoly(std::move(d));
}

Int IPoly::content() const {
  Int g = 0;
  for (const Int& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IPoly IPoly::primitive_part() const {
  if (is_zero()) return *this;
  Int g = content();
  if (lc() < 0) g = -g;
  std::vector<Int> v;
  for (const Int& c : coeffs_) v.push_back(c / g);
  return IPoly(std::move(v));
}

IPoly IPoly::reversed(int n) const {
  require(n >= degree(), "reversal degree below polynomial degree");
  std::vector<Int> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= degree(); ++i) v[static_cast<std::size_t>(n - i)] = coeffs_[static_cast<std::size_t>(i)];
  return IPoly(std::move(v));
}

IPoly IPoly::compose_affine(const Int& a, const Int& b) const {
  // Horner: r <- r*(a + b t) + c
  IPoly lin(std::vector<Int>{a, b});
  IPoly r;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * lin + IPoly::constant(*it);
  return r;
}

IPoly IPoly::negate_x() const {
  std::vector<Int> v = coeffs_;
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return IPoly(std::move(v));
}

IPoly IPoly::operator-() const {
  std::vector<Int> v = coeffs_;
  for (Int& c : v) c = -c;
  return IPoly(std::move(v));
}

IPoly operator+(const IPoly& a, const IPoly& b) {
  std::vector<Int> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return IPoly(std::move(v));
}

IPoly operator-(const IPoly& a, const IPoly& b) { return a + (-b); }

IPoly operator*(const IPoly& a, const IPoly& b) {
  if (a.is_zero() || b.is_zero()) return IPoly();
  std::vector<Int> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IPoly(std::move(v));
}

IPoly operator*(const Int& c, const IPoly& a) {
  std::vector<Int> v = a.coeffs_;
  for (Int& x : v) x *= c;
  return IPoly(std::move(v));
}

bool IPoly::divides_exactly(const IPoly& a, const IPoly& b, IPoly* quotient) {
  require(!b.is_zero(), "division by the zero polynomial");
  std::vector<Int> r = a.coeffs_;
  int db = b.degree();
  if (a.degree() < db) {
    if (a.is_zero()) {
      if (quotient) *quotient = IPoly();
      return true;
    }
    return false;
  }
  std::vector<Int> q(static_cast<std::size_t>(a.degree() - db) + 1);
  const Int& lb = b.lc();
  for (int i = a.degree(); i >= db; --i) {
    Int& top = r[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
    Int c = top / lb;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs_[static_cast<std::size_t>(j)];
  }
  for (const Int& c : r)
    if (c != 0) return false;
  if (quotient) *quotient = IPoly(std::move(q));
  return true;
}

std::string IPoly::to_coeff_list() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (int i = degree(); i >= 0; --i) {
    os << coeffs_[static_cast<std::size_t>(i)].get_str();
    if (i > 0) os << ' ';
  }
  return os.str();
}

std::string IPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Int mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << 'x';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  IPoly parse() {
    IPoly r = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& msg) {
    fail(ErrorCode::ParseError, msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == 'x' || c == 'X' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
  }

  IPoly expr() {
    IPoly r;
    bool first = true;
    for (;;) {
      skip();
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      IPoly t = term();
      r = sign > 0 ? r + t : r - t;
      first = false;
      skip();
      if (!(peek('+') || peek('-'))) break;
    }
    return r;
  }

  IPoly term() {
    IPoly r = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        r = r * power();
      } else if (starts_factor()) {
        r = r * power();
      } else {
        break;
      }
    }
    return r;
  }

  IPoly power() {
    IPoly b = base();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) error("expected exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (e > 64) error("exponent too large");
      IPoly r = IPoly::constant(Int(1));
      for (int i = 0; i < e; ++i) r = r * b;
      return r;
    }
    return b;
  }

  IPoly base() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == 'x' || c == 'X') {
      ++pos_;
      return IPoly::monomial(Int(1), 1);
    }
    if (c == '(') {
      ++pos_;
      IPoly r = expr();
      if (!peek(')')) error("expected ')'");
      ++pos_;
      return r;
    }
    if (c == '-' || c == '+') {
      ++pos_;
      IPoly r = power();
      return c == '-' ? -r : r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return IPoly::constant(int_from_string(std::string(s_.substr(start, pos_ - start))));
    }
    error("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

bool looks_like_coeff_list(std::string_view s) {
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || std::isspace(static_cast<unsigned char>(c)) || c == '-' || c == '+'))
      return false;
  // a coefficient list has whitespace-separated tokens, each an integer
  std::istringstream is{std::string(s)};
  std::string tok;
  int count = 0;
  while (is >> tok) {
    ++count;
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i >= tok.size()) return false;
    for (; i < tok.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
  }
  return count >= 1;
}

}  // namespace

IPoly parse_coeff_list(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<Int> coeffs;
  std::string tok;
  while (is >> tok) coeffs.push_back(int_from_string(tok));
  if (coeffs.empty()) fail(ErrorCode::ParseError, "empty coefficient list at position 0");
  return IPoly::from_leading_first(coeffs);
}

IPoly parse_expression(std::string_view text) { return ExprParser(text).parse(); }

IPoly parse_ipoly(std::string_view text) {
  if (looks_like_coeff_list(text)) return parse_coeff_list(text);
  return parse_expression(text);
}

// ---------------------------------------------------------------------------
// Resultants

Int determinant(std::vector<std::vector<Int>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Int(1);
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return Int(0);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Int resultant(const IPoly& g, const IPoly& h) {
  require(!g.is_zero() && !h.is_zero(), "resultant of the zero polynomial");
  const int m = g.degree(), n = h.degree();
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Int>> s(size, std::vector<Int>(size));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = g.coeff(m - i);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + i)] = h.coeff(n - i);
  return determinant(std::move(s));
}

Int discriminant(const IPoly& f) {
  require(f.degree() >= 2, "discriminant needs degree >= 2");
  const long d = f.degree();
  Int r = resultant(f, f.derivative());
  Int q = r / f.lc();
  return ((d * (d - 1) / 2) % 2 == 0) ? q : Int(-q);
}

// ---------------------------------------------------------------------------
// Q[x] helpers

QPoly to_qpoly(const IPoly& f) {
  QPoly q;
  for (const Int& c : f.coeffs()) q.emplace_back(c);
  return q;
}

void qpoly_trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Rat qpoly_eval(const QPoly& f, const Rat& x) {
  Rat r = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
  return r;
}

namespace {

void qpoly_divmod(const QPoly& a, const QPoly& b, QPoly* q, QPoly* r) {
  QPoly rem = a;
  qpoly_trim(rem);
  QPoly bb = b;
  qpoly_trim(bb);
  require(!bb.empty(), "division by the zero polynomial");
  const std::size_t db = bb.size() - 1;
  QPoly quo(rem.size() >= bb.size() ? rem.size() - db : 0);
  while (rem.size() >= bb.size() && !rem.empty()) {
    std::size_t shift = rem.size() - bb.size();
    Rat c = rem.back() / bb.back();
    quo[shift] = c;
    for (std::size_t i = 0; i <= db; ++i) rem[shift + i] -= c * bb[i];
    rem.pop_back();
    qpoly_trim(rem);
  }
  if (q) {
    qpoly_trim(quo);
    *q = quo;
  }
  if (r) *r = rem;
}

}  // namespace

QPoly qpoly_rem(const QPoly& a, const QPoly& b) {
  QPoly r;
  qpoly_divmod(a, b, nullptr, &r);
  return r;
}

QPoly qpoly_div(const QPoly& a, const QPoly& b) {
  QPoly q;
  qpoly_divmod(a, b, &q, nullptr);
  return q;
}

QPoly qpoly_gcd(QPoly a, QPoly b) {
  qpoly_trim(a);
  qpoly_trim(b);
  while (!b.empty()) {
    QPoly r = qpoly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat l = a.back();
    for (Rat& c : a) c /= l;
  }
  return a;
}

QPoly qpoly_derivative(const QPoly& f) {
  QPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
  qpoly_trim(d);
  return d;
}

IPoly qpoly_to_primitive(const QPoly& f) {
  Int l = 1;
  for (const Rat& c : f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Int> v;
  for (const Rat& c : f) {
    Rat s = c * Rat(l);
    v.push_back(Int(s.get_num()));
  }
  return IPoly(std::move(v)).primitive_part();
}

}  // namespace hyperpts
