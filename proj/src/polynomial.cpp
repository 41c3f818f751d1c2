#include "ncdef/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>

#include "ncdef/errors.hpp"

namespace ncdef {

MonomialOrder::MonomialOrder(std::vector<int> weights, std::vector<std::size_t> priority)
    : weights_(std::move(weights)), priority_(std::move(priority)) {
  std::vector<std::size_t> sorted = priority_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i || sorted.size() != weights_.size())
      throw InvalidInput("MonomialOrder: priority must be a permutation of the variables");
  for (int w : weights_)
    if (w <= 0) throw InvalidInput("MonomialOrder: weights must be positive");
}

MonomialOrder MonomialOrder::deglex(std::size_t nvars) {
  std::vector<std::size_t> p(nvars);
  std::iota(p.begin(), p.end(), 0);
  return MonomialOrder(std::vector<int>(nvars, 1), std::move(p));
}

long MonomialOrder::weight(const Exponents& e) const {
  long w = 0;
  for (std::size_t i = 0; i < e.size(); ++i) w += static_cast<long>(weights_[i]) * e[i];
  return w;
}

int MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
  const long wa = weight(a), wb = weight(b);
  if (wa != wb) return wa > wb ? 1 : -1;
  for (auto v : priority_)
    if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
  return 0;
}

Polynomial::Polynomial(std::size_t nvars, Terms terms) : nvars_(nvars), terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& t) { return sgn(t.second) == 0; });
}

Polynomial Polynomial::constant(std::size_t nvars, const Scalar& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::monomial(Exponents e, const Scalar& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Exponents e(nvars, 0);
  e.at(i) = 1;
  return monomial(std::move(e));
}

Scalar Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const Scalar& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

std::pair<Exponents, Scalar> Polynomial::leading(const MonomialOrder& order) const {
  auto best = terms_.begin();
  for (auto it = terms_.begin(); it != terms_.end(); ++it)
    if (order.greater(it->first, best->first)) best = it;
  return *best;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (nvars_ == 0) nvars_ = rhs.nvars_;
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (nvars_ == 0) nvars_ = rhs.nvars_;
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.nvars_, b.nvars_));
  Exponents e;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::pow(int n) const {
  if (n < 0) {
    if (terms_.size() != 1) throw InvalidInput("negative power of a non-monomial expression");
    Exponents e = terms_.begin()->first;
    const Scalar c = terms_.begin()->second;
    for (auto& x : e) x = -x;
    return monomial(std::move(e), 1 / c).pow(-n);
  }
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

std::string format_monomial(const Exponents& e, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names.at(i);
    if (e[i] != 1) out += '^' + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  // print in descending degree-lex order for readability
  std::vector<std::pair<Exponents, Scalar>> ts(terms_.begin(), terms_.end());
  const auto order = MonomialOrder::deglex(nvars_);
  std::sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
    long da = std::accumulate(a.first.begin(), a.first.end(), 0L);
    long db = std::accumulate(b.first.begin(), b.first.end(), 0L);
    if (da != db) return da > db;
    return order.compare(a.first, b.first) > 0;
  });
  std::string out;
  for (const auto& [e, c] : ts) {
    const bool unit_monomial = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    Scalar mag = abs(c);
    std::string body;
    if (unit_monomial) body = mag.get_str();
    else if (mag == 1) body = format_monomial(e, names);
    else body = mag.get_str() + "*" + format_monomial(e, names);
    if (out.empty()) out = (sgn(c) < 0 ? "-" : "") + body;
    else out += (sgn(c) < 0 ? " - " : " + ") + body;
  }
  return out;
}

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const std::vector<std::string>& names)
      : text_(text), names_(names) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidInput("cannot parse '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                       ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    while (true) {
      if (accept('+')) p += term();
      else if (accept('-')) p -= term();
      else return p;
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    while (true) {
      if (accept('*')) {
        p = p * unary();
      } else if (accept('/')) {
        Polynomial d = unary();
        if (d.terms().size() != 1 ||
            std::any_of(d.terms().begin()->first.begin(), d.terms().begin()->first.end(),
                        [](int x) { return x != 0; }))
          fail("division is only supported by nonzero constants");
        p *= 1 / d.terms().begin()->second;
      } else {
        return p;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      bool neg = false;
      if (accept('-')) neg = true;
      else accept('+');
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      const int n = std::stoi(std::string(text_.substr(start, pos_ - start)));
      return base.pow(neg ? -n : n);
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial::constant(names_.size(), Scalar(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) fail("undeclared variable '" + name + "'");
      return Polynomial::variable(names_.size(), static_cast<std::size_t>(it - names_.begin()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names) {
  return ExpressionParser(text, names).parse();
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

namespace {

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents l(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

Exponents quotient(const Exponents& a, const Exponents& b) {
  Exponents q(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) q[i] = a[i] - b[i];
  return q;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

Polynomial monic(Polynomial p, const MonomialOrder& order) {
  const Scalar lc = p.leading(order).second;
  return p * (1 / lc);
}

}  // namespace

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  const auto [ef, cf] = f.leading(order);
  const auto [eg, cg] = g.leading(order);
  const Exponents l = lcm(ef, eg);
  return Polynomial::monomial(quotient(l, ef), 1 / cf) * f -
         Polynomial::monomial(quotient(l, eg), 1 / cg) * g;
}

Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& g, const MonomialOrder& order) {
  std::vector<std::pair<Exponents, Scalar>> leads;
  leads.reserve(g.size());
  for (const auto& gi : g) leads.push_back(gi.leading(order));

  auto cmp = [&order](const Exponents& a, const Exponents& b) { return order.greater(a, b); };
  std::map<Exponents, Scalar, decltype(cmp)> work(cmp);
  for (const auto& [e, c] : p.terms()) work.emplace(e, c);

  Polynomial remainder(p.nvars());
  while (!work.empty()) {
    auto it = work.begin();
    const Exponents e = it->first;
    const Scalar c = it->second;
    work.erase(it);
    std::size_t k = 0;
    while (k < g.size() && !divides(leads[k].first, e)) ++k;
    if (k == g.size()) {
      remainder.add_term(e, c);
      continue;
    }
    const Exponents q = quotient(e, leads[k].first);
    const Scalar f = c / leads[k].second;
    for (const auto& [ge, gc] : g[k].terms()) {
      if (ge == leads[k].first) continue;
      Exponents t = ge;
      for (std::size_t i = 0; i < t.size(); ++i) t[i] += q[i];
      auto [wit, inserted] = work.try_emplace(t, -f * gc);
      if (!inserted) {
        wit->second -= f * gc;
        if (sgn(wit->second) == 0) work.erase(wit);
      }
    }
  }
  return remainder;
}

std::vector<Polynomial> groebner_basis(std::vector<Polynomial> generators, const MonomialOrder& order) {
  std::vector<Polynomial> basis;
  for (auto& g : generators)
    if (!g.is_zero()) basis.push_back(monic(std::move(g), order));

  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    const auto [i, j] = pairs.front();
    pairs.pop_front();
    if (coprime(basis[i].leading(order).first, basis[j].leading(order).first)) continue;
    Polynomial r = reduce(s_polynomial(basis[i], basis[j], order), basis, order);
    if (r.is_zero()) continue;
    basis.push_back(monic(std::move(r), order));
    for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
  }

  // minimalize: drop elements whose leading term is divisible by another's
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto li = basis[i].leading(order).first;
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto lj = basis[j].leading(order).first;
      if (divides(lj, li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // interreduce tails
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const auto [le, lc] = minimal[i].leading(order);
    Polynomial tail = minimal[i];
    tail.add_term(le, -lc);
    Polynomial reduced = reduce(tail, others, order);
    reduced.add_term(le, lc);
    minimal[i] = monic(std::move(reduced), order);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& a, const Polynomial& b) {
    return order.greater(b.leading(order).first, a.leading(order).first);
  });
  return minimal;
}

}  // namespace ncdef
