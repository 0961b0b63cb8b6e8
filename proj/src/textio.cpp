#include "cremona/textio.hpp"

#include <cctype>
#include <map>
#include <vector>

#include "cremona/error.hpp"

namespace cremona {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const HomPoly& p) {
  if (p.is_zero()) return "0";
  static const char* names[3] = {"x", "y", "z"};
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string mono;
    for (int i = 0; i < 3; ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    Rational a = abs(c);
    std::string body;
    if (mono.empty())
      body = a.get_str();
    else if (a == 1)
      body = mono;
    else
      body = a.get_str() + "*" + mono;
    if (first)
      out = (c < 0 ? "-" : "") + body;
    else
      out += (c < 0 ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

std::string to_string(const BirMap& f) {
  const auto& c = f.components();
  return "[" + to_string(c[0]) + " : " + to_string(c[1]) + " : " + to_string(c[2]) + "]";
}

std::string to_string(const FactorWord& w) {
  std::string s;
  for (const auto& e : w) {
    if (!s.empty()) s += " ";
    if (auto* m = std::get_if<LinMap>(&e))
      s += m->str();
    else
      s += "sigma" + std::to_string(static_cast<int>(std::get<Quadric>(e)));
  }
  return s;
}

namespace {

[[noreturn]] void fail(const std::string& what, std::string_view input) {
  throw Error(ErrorKind::ParseError, what + " in '" + std::string(input) + "'");
}

// Polynomial that need not be homogeneous, used while parsing.
using Sparse = std::map<Mono, Rational, std::greater<Mono>>;

Sparse add(Sparse a, const Sparse& b, int sign) {
  for (const auto& [m, c] : b) {
    a[m] += sign * c;
    if (a[m] == 0) a.erase(m);
  }
  return a;
}

Sparse mul(const Sparse& a, const Sparse& b) {
  Sparse r;
  for (const auto& [m1, c1] : a)
    for (const auto& [m2, c2] : b) {
      Mono m{m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]};
      r[m] += c1 * c2;
      if (r[m] == 0) r.erase(m);
    }
  return r;
}

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  Sparse parse() {
    Sparse r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'", s_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Sparse expr() {
    Sparse r;
    int sign = 1;
    if (eat('-'))
      sign = -1;
    else
      eat('+');
    r = add(r, term(), sign);
    for (;;) {
      if (eat('+'))
        r = add(r, term(), 1);
      else if (eat('-'))
        r = add(r, term(), -1);
      else
        return r;
    }
  }

  Sparse term() {
    Sparse r = power();
    for (;;) {
      skip();
      if (eat('*')) {
        r = mul(r, power());
      } else if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
        r = mul(r, power());  // implicit product such as "2x"
      } else {
        return r;
      }
    }
  }

  Sparse power() {
    Sparse base = atom();
    if (eat('^')) {
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent", s_);
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      Sparse r{{Mono{0, 0, 0}, Rational(1)}};
      for (int k = 0; k < e; ++k) r = mul(r, base);
      return r;
    }
    return base;
  }

  Sparse atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input", s_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Sparse r = expr();
      if (!eat(')')) fail("expected ')'", s_);
      return r;
    }
    if (c == '-') {
      ++pos_;
      return add({}, atom(), -1);
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      Mono m{0, 0, 0};
      m[c - 'x'] = 1;
      return {{m, Rational(1)}};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Rational v(std::string(s_.substr(start, pos_ - start)));
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (ds == pos_) fail("expected denominator", s_);
        Rational den(std::string(s_.substr(ds, pos_ - ds)));
        if (den == 0) fail("zero denominator", s_);
        v /= den;
      }
      Sparse r;
      if (v != 0) r[Mono{0, 0, 0}] = v;
      return r;
    }
    fail("unexpected character '" + std::string(1, c) + "'", s_);
  }

  std::string_view s_;
  size_t pos_ = 0;
};

Rational parse_rational(std::string_view s) {
  std::string t = trim(s);
  if (t.empty()) fail("empty number", s);
  Sparse v = PolyParser(t).parse();
  if (v.empty()) return 0;
  if (v.size() != 1 || v.begin()->first != Mono{0, 0, 0}) fail("expected a number", s);
  return v.begin()->second;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip_brackets(std::string_view s, char open, char close) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != open || t.back() != close)
    fail(std::string("expected ") + open + "..." + close, s);
  return t.substr(1, t.size() - 2);
}

}  // namespace

HomPoly parse_poly(std::string_view s) {
  std::string t = trim(s);
  if (t.empty()) fail("empty polynomial", s);
  Sparse sp = PolyParser(t).parse();
  if (sp.empty()) return HomPoly(0);
  const Mono& first = sp.begin()->first;
  int d = first[0] + first[1] + first[2];
  HomPoly::Terms terms;
  for (const auto& [m, c] : sp) {
    if (m[0] + m[1] + m[2] != d) fail("polynomial is not homogeneous", s);
    terms.emplace(m, c);
  }
  return HomPoly(d, std::move(terms));
}

ProjPoint parse_point(std::string_view s) {
  auto parts = split(strip_brackets(s, '[', ']'), ':');
  if (parts.size() != 3) fail("a point needs three coordinates", s);
  return ProjPoint(parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]));
}

P1Point parse_p1(std::string_view s) {
  auto parts = split(strip_brackets(s, '[', ']'), ':');
  if (parts.size() != 2) fail("a direction needs two coordinates", s);
  return P1Point(parse_rational(parts[0]), parse_rational(parts[1]));
}

LinMap parse_lin(std::string_view s) {
  std::string t = trim(s);
  if (t.rfind("lin", 0) != 0) fail("expected lin(...)", s);
  auto rows = split(strip_brackets(t.substr(3), '(', ')'), ';');
  if (rows.size() != 3) fail("lin(...) needs three rows", s);
  Matrix3 m;
  for (int r = 0; r < 3; ++r) {
    auto entries = split(rows[r], ',');
    if (entries.size() != 3) fail("each row of lin(...) needs three entries", s);
    for (int c = 0; c < 3; ++c) m[r][c] = parse_rational(entries[c]);
  }
  return LinMap(m);
}

BirMap parse_map(std::string_view s) {
  std::string t = trim(s);
  if (t == "id") return BirMap();
  if (t == "sigma1") return BirMap::sigma(1);
  if (t == "sigma2") return BirMap::sigma(2);
  if (t == "sigma3") return BirMap::sigma(3);
  if (t == "tau12") return BirMap::tau(1, 2);
  if (t == "tau13") return BirMap::tau(1, 3);
  if (t == "tau23") return BirMap::tau(2, 3);
  if (t.rfind("lin", 0) == 0) return BirMap::linear(parse_lin(t));
  auto parts = split(strip_brackets(t, '[', ']'), ':');
  if (parts.size() != 3) fail("a map needs three components", s);
  Triple f{parse_poly(parts[0]), parse_poly(parts[1]), parse_poly(parts[2])};
  int d = -1;
  for (const auto& p : f) {
    if (p.is_zero()) continue;
    if (d >= 0 && p.degree() != d) throw Error(ErrorKind::DegreeMismatch, "components of different degrees");
    d = p.degree();
  }
  if (d < 0) throw Error(ErrorKind::ZeroTriple, "all three components vanish");
  for (auto& p : f)
    if (p.is_zero()) p = HomPoly(d);
  BirMap m = BirMap::from_components(f);
  if (m.is_linear()) return BirMap::linear(m.as_linear());
  return m;
}

BubblePoint parse_bubble(std::string_view s) {
  auto parts = split(s, '^');
  BubblePoint p(parse_point(parts[0]));
  for (size_t i = 1; i < parts.size(); ++i) p.tower.push_back(parse_p1(parts[i]));
  if (p.height() > kMaxTowerHeight) throw Error(ErrorKind::TowerTooDeep, std::string(s));
  return p;
}

LinearSystem parse_system(std::string_view s) {
  auto parts = split(s, ';');
  std::string head = trim(parts[0]);
  if (head.rfind("deg=", 0) != 0) fail("expected deg=<n>", s);
  int d;
  try {
    d = std::stoi(head.substr(4));
  } catch (const std::exception&) {
    fail("bad degree", s);
  }
  if (d < 1) fail("degree must be positive", s);
  std::vector<WeightedPoint> base;
  for (size_t i = 1; i < parts.size(); ++i) {
    std::string item = trim(parts[i]);
    if (item.empty()) continue;
    auto fields = split(strip_brackets(item, '(', ')'), ',');
    if (fields.size() != 2) fail("expected (point, multiplicity)", s);
    int m;
    try {
      m = std::stoi(trim(fields[1]));
    } catch (const std::exception&) {
      fail("bad multiplicity", s);
    }
    if (m < 0) fail("negative multiplicity", s);
    base.emplace_back(parse_bubble(fields[0]), m);
  }
  return LinearSystem(d, std::move(base));
}

}  // namespace cremona
