#include "gdet/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "gdet/errors.hpp"

namespace gdet {

namespace {

bool packable(const std::vector<Monomial::VarExp>& pairs) {
  for (const auto& [var, exp] : pairs)
    if (var >= 16 || exp > 15) return false;
  return true;
}

}  // namespace

Monomial Monomial::variable(int var, int exp) {
  if (var < 0) fail(ErrorKind::InvalidSpec, "negative variable index");
  if (exp < 0) fail(ErrorKind::InvalidSpec, "negative exponent");
  if (exp == 0) return Monomial();
  return from_exponents({{var, exp}});
}

Monomial Monomial::from_exponents(std::vector<VarExp> pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<VarExp> merged;
  for (const auto& [var, exp] : pairs) {
    if (var < 0) fail(ErrorKind::InvalidSpec, "negative variable index");
    if (exp < 0) fail(ErrorKind::InvalidSpec, "negative exponent");
    if (exp == 0) continue;
    if (!merged.empty() && merged.back().first == var)
      merged.back().second += exp;
    else
      merged.emplace_back(var, exp);
  }
  Monomial m;
  for (const auto& [var, exp] : merged) m.degree_ += exp;
  if (packable(merged)) {
    for (const auto& [var, exp] : merged)
      m.packed_ |= static_cast<std::uint64_t>(exp) << (4 * var);
  } else {
    m.wide_ = std::make_shared<const std::vector<VarExp>>(std::move(merged));
  }
  return m;
}

Monomial Monomial::times(const Monomial& other) const {
  if (packed() && other.packed() &&
      degree_ + other.degree_ <= kPackedMaxExp) {
    // No 4-bit field can overflow when the total degree stays below 16.
    Monomial m;
    m.packed_ = packed_ + other.packed_;
    m.degree_ = degree_ + other.degree_;
    return m;
  }
  auto pairs = exponents();
  const auto rhs = other.exponents();
  pairs.insert(pairs.end(), rhs.begin(), rhs.end());
  return from_exponents(std::move(pairs));
}

std::vector<Monomial::VarExp> Monomial::exponents() const {
  if (!packed()) return *wide_;
  std::vector<VarExp> pairs;
  for (int var = 0; var < kPackedVars; ++var) {
    const int exp = static_cast<int>((packed_ >> (4 * var)) & 0xF);
    if (exp != 0) pairs.emplace_back(var, exp);
  }
  return pairs;
}

int Monomial::exponent_of(int var) const {
  if (packed()) {
    if (var < 0 || var >= kPackedVars) return 0;
    return static_cast<int>((packed_ >> (4 * var)) & 0xF);
  }
  for (const auto& [v, e] : *wide_)
    if (v == var) return e;
  return 0;
}

bool Monomial::operator==(const Monomial& other) const {
  if (degree_ != other.degree_) return false;
  if (packed() != other.packed()) return false;
  if (packed()) return packed_ == other.packed_;
  return *wide_ == *other.wide_;
}

int Monomial::grlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  const auto ea = a.exponents();
  const auto eb = b.exponents();
  size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].first != eb[j].first) {
      // The monomial owning the smaller variable index is grlex-greater.
      return ea[i].first < eb[j].first ? 1 : -1;
    }
    if (ea[i].second != eb[j].second)
      return ea[i].second > eb[j].second ? 1 : -1;
    ++i;
    ++j;
  }
  if (i == ea.size() && j == eb.size()) return 0;
  return i < ea.size() ? 1 : -1;
}

std::size_t Monomial::hash() const {
  if (packed()) return splitmix64(packed_ * 0x9E3779B97F4A7C15ULL + 1);
  std::uint64_t h = 0xC0FFEE123456789ULL;
  for (const auto& [var, exp] : *wide_) {
    h = splitmix64(h ^ static_cast<std::uint64_t>(var));
    h = splitmix64(h ^ static_cast<std::uint64_t>(exp));
  }
  return h;
}

std::string Monomial::to_string() const {
  if (is_one()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [var, exp] : exponents()) {
    if (!first) out << "*";
    out << "x" << var;
    if (exp > 1) out << "^" << exp;
    first = false;
  }
  return out.str();
}

Polynomial Polynomial::constant(BigInt value) {
  Polynomial p;
  p.add_term(Monomial(), value);
  return p;
}

Polynomial Polynomial::variable(int var) {
  Polynomial p;
  p.add_term(Monomial::variable(var), 1);
  return p;
}

Polynomial Polynomial::term(BigInt coeff, Monomial m) {
  Polynomial p;
  p.add_term(m, coeff);
  return p;
}

void Polynomial::add_term(const Monomial& m, const BigInt& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt Polynomial::coefficient_of(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator+(Polynomial a, const Polynomial& b) {
  a += b;
  return a;
}

Polynomial operator-(Polynomial a, const Polynomial& b) {
  a -= b;
  return a;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial r;
  for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const Polynomial& outer = a.term_count() <= b.term_count() ? a : b;
  const Polynomial& inner = a.term_count() <= b.term_count() ? b : a;
  Polynomial r;
  r.terms_.reserve(outer.term_count() + inner.term_count());
  for (const auto& [ma, ca] : outer.terms_)
    for (const auto& [mb, cb] : inner.terms_)
      r.add_term(ma.times(mb), ca * cb);
  return r;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(1);
  Polynomial base = *this;
  while (exponent != 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent != 0) base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (const auto& [m, c] : terms_) {
    const auto it = other.terms_.find(m);
    if (it == other.terms_.end() || it->second != c) return false;
  }
  return true;
}

Polynomial Polynomial::rename(const std::map<int, int>& mapping) const {
  std::set<int> targets;
  for (int var : variables()) {
    const auto it = mapping.find(var);
    if (it == mapping.end())
      fail(ErrorKind::UnmappedVariable,
           "variable x" + std::to_string(var) + " has no image");
    if (!targets.insert(it->second).second)
      fail(ErrorKind::InvalidSpec, "rename map is not injective");
  }
  Polynomial r;
  r.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    std::vector<Monomial::VarExp> pairs;
    for (const auto& [var, exp] : m.exponents())
      pairs.emplace_back(mapping.at(var), exp);
    r.terms_.emplace(Monomial::from_exponents(std::move(pairs)), c);
  }
  return r;
}

BigInt Polynomial::evaluate(const std::map<int, BigInt>& point) const {
  BigInt sum = 0;
  for (const auto& [m, c] : terms_) {
    BigInt prod = c;
    for (const auto& [var, exp] : m.exponents()) {
      const auto it = point.find(var);
      if (it == point.end())
        fail(ErrorKind::UnmappedVariable,
             "variable x" + std::to_string(var) + " has no value");
      prod *= boost::multiprecision::pow(it->second,
                                         static_cast<unsigned>(exp));
    }
    sum += prod;
  }
  return sum;
}

std::uint64_t Polynomial::evaluate_mod(
    const std::map<int, std::uint64_t>& point, std::uint64_t prime) const {
  std::uint64_t sum = 0;
  for (const auto& [m, c] : terms_) {
    std::uint64_t prod = bigint_mod(c, prime);
    for (const auto& [var, exp] : m.exponents()) {
      const auto it = point.find(var);
      if (it == point.end())
        fail(ErrorKind::UnmappedVariable,
             "variable x" + std::to_string(var) + " has no value");
      prod = mulmod(prod, powmod(it->second % prime, exp, prime), prime);
    }
    sum = addmod(sum, prod, prime);
  }
  return sum;
}

int Polynomial::total_degree() const {
  int degree = -1;
  for (const auto& [m, c] : terms_) degree = std::max(degree, m.degree());
  return degree;
}

bool Polynomial::is_homogeneous(int degree) const {
  for (const auto& [m, c] : terms_)
    if (m.degree() != degree) return false;
  return true;
}

std::vector<int> Polynomial::variables() const {
  std::set<int> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [var, exp] : m.exponents()) vars.insert(var);
  return {vars.begin(), vars.end()};
}

std::vector<std::pair<Monomial, BigInt>> Polynomial::sorted_terms() const {
  std::vector<std::pair<Monomial, BigInt>> sorted(terms_.begin(),
                                                  terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return Monomial::grlex_cmp(a.first, b.first) > 0;
  });
  return sorted;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : sorted_terms()) {
    const BigInt mag = boost::multiprecision::abs(c);
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    if (m.is_one())
      out << mag.str();
    else if (mag == 1)
      out << m.to_string();
    else
      out << mag.str() << "*" << m.to_string();
    first = false;
  }
  return out.str();
}

namespace {

struct PolyParser {
  const std::string& text;
  size_t pos = 0;

  explicit PolyParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void parse_fail(const std::string& what) {
    fail(ErrorKind::InvalidSpec,
         "polynomial parse error at offset " + std::to_string(pos) + ": " +
             what);
  }

  BigInt read_integer() {
    skip_ws();
    const size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) parse_fail("expected digits");
    return BigInt(text.substr(start, pos - start));
  }

  // factor := x<digits> ['^' <digits>]
  Monomial::VarExp read_factor() {
    skip_ws();
    if (peek() != 'x') parse_fail("expected variable");
    ++pos;
    const int var = static_cast<int>(read_integer());
    int exp = 1;
    if (peek() == '^') {
      ++pos;
      exp = static_cast<int>(read_integer());
    }
    return {var, exp};
  }

  // term := <digits> ['*' factor ('*' factor)*] | factor ('*' factor)*
  std::pair<Monomial, BigInt> read_term() {
    BigInt coeff = 1;
    std::vector<Monomial::VarExp> pairs;
    skip_ws();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = read_integer();
      while (peek() == '*') {
        ++pos;
        pairs.push_back(read_factor());
      }
    } else {
      pairs.push_back(read_factor());
      while (peek() == '*') {
        ++pos;
        pairs.push_back(read_factor());
      }
    }
    return {Monomial::from_exponents(std::move(pairs)), coeff};
  }

  Polynomial run() {
    Polynomial p;
    if (eof()) parse_fail("empty input");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos;
    }
    while (true) {
      auto [m, c] = read_term();
      p.add_term(m, negative ? -c : c);
      if (eof()) break;
      const char sign = peek();
      if (sign != '+' && sign != '-') parse_fail("expected + or -");
      negative = sign == '-';
      ++pos;
    }
    return p;
  }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text) {
  return PolyParser(text).run();
}

}  // namespace gdet
