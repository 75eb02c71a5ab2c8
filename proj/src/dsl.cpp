#include "edlab/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <sstream>

#include "edlab/errors.hpp"
#include "edlab/morphism.hpp"
#include "edlab/structure.hpp"

namespace edlab {

std::string_view atom_name(AtomKind k) {
  switch (k) {
    case AtomKind::C: return "C";
    case AtomKind::D: return "D";
    case AtomKind::Q: return "Q";
    case AtomKind::QD: return "QD";
    case AtomKind::S: return "S";
    case AtomKind::A: return "A";
    case AtomKind::SL: return "SL";
    case AtomKind::GL: return "GL";
    case AtomKind::PSL: return "PSL";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------- lexer

struct Token {
  enum class Kind { Ident, Int, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t pos = 0;
};

std::optional<AtomKind> atom_kind(const std::string& s) {
  static const std::pair<const char*, AtomKind> kinds[] = {
      {"C", AtomKind::C},   {"D", AtomKind::D},   {"Q", AtomKind::Q},
      {"QD", AtomKind::QD}, {"S", AtomKind::S},   {"A", AtomKind::A},
      {"SL", AtomKind::SL}, {"GL", AtomKind::GL}, {"PSL", AtomKind::PSL}};
  for (const auto& [name, k] : kinds)
    if (s == name) return k;
  return std::nullopt;
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      std::string word(s.substr(i, j - i));
      // "xS(3)": product operator glued to the next kind name
      if (word.size() > 1 && word[0] == 'x' && (atom_kind(word.substr(1)) || word.substr(1) == "perm")) {
        out.push_back({Token::Kind::Ident, "x", i});
        word.erase(0, 1);
        ++i;
      }
      out.push_back({Token::Kind::Ident, word, i});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::Int, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Token::Kind::Symbol, "->", i});
      i += 2;
    } else if (std::string_view("()[],;:^-").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Symbol, std::string(1, c), i});
      ++i;
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Token::Kind::End, "", s.size()});
  return out;
}

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

void check_atom(AtomKind k, const std::vector<long>& p, std::size_t pos) {
  auto fail = [&](const std::string& msg) {
    throw SemanticError(std::string(atom_name(k)) + ": " + msg + " (at " + std::to_string(pos) + ")");
  };
  const bool linear = k == AtomKind::SL || k == AtomKind::GL || k == AtomKind::PSL;
  if (p.size() != (linear ? 2u : 1u)) fail(linear ? "expects (n, q)" : "expects one parameter");
  for (long v : p)
    if (v < 1) fail("parameters must be positive");
  switch (k) {
    case AtomKind::D:
      if (p[0] % 2 != 0) fail("order must be even");
      break;
    case AtomKind::Q:
      if (p[0] % 4 != 0) fail("order must be divisible by 4");
      break;
    case AtomKind::QD:
      if (!is_power_of_two(p[0]) || p[0] < 16) fail("order must be a power of two >= 16");
      break;
    case AtomKind::SL:
    case AtomKind::GL:
    case AtomKind::PSL:
      if (!is_prime(static_cast<std::uint64_t>(p[1]))) fail("field size must be prime");
      break;
    default:
      break;
  }
}

// ---------------------------------------------------------------- parser

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Construction parse() {
    Construction c = expr();
    if (peek().kind != Token::Kind::End) error("unexpected '" + peek().text + "'");
    return c;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at_symbol(std::string_view s) const {
    return peek().kind == Token::Kind::Symbol && peek().text == s;
  }
  bool at_ident(std::string_view s) const {
    return peek().kind == Token::Kind::Ident && peek().text == s;
  }
  [[noreturn]] void error(const std::string& msg) const { throw SyntaxError(msg, peek().pos); }
  void expect(std::string_view s) {
    if (!at_symbol(s)) error("expected '" + std::string(s) + "'");
    next();
  }
  long integer() {
    if (peek().kind != Token::Kind::Int) error("expected integer");
    return std::stol(next().text);
  }
  long signed_integer() {
    if (at_symbol("-")) {
      next();
      return -integer();
    }
    return integer();
  }
  std::size_t last_end() const {
    const Token& t = tokens_[pos_ == 0 ? 0 : pos_ - 1];
    return t.pos + t.text.size();
  }

  Construction expr() {
    const std::size_t begin = peek().pos;
    Construction first = semi();
    if (!at_ident("x")) return first;
    Construction prod;
    prod.kind = Construction::Kind::DirectProduct;
    prod.parts.push_back(std::move(first));
    while (at_ident("x")) {
      next();
      prod.parts.push_back(semi());
    }
    prod.begin = begin;
    prod.end = last_end();
    return prod;
  }

  Construction semi() {
    const std::size_t begin = peek().pos;
    Construction normal = unit();
    if (!at_symbol(":")) return normal;
    next();
    Construction s;
    s.kind = Construction::Kind::Semidirect;
    s.parts.push_back(std::move(normal));
    s.parts.push_back(unit());
    s.actions = action_block();
    s.begin = begin;
    s.end = last_end();
    return s;
  }

  Construction unit() {
    const std::size_t begin = peek().pos;
    Construction c;
    if (at_symbol("(")) {
      next();
      c = expr();
      expect(")");
    } else if (at_ident("perm")) {
      next();
      c.kind = Construction::Kind::ExplicitPerms;
      c.perm_generators = perm_list();
    } else if (peek().kind == Token::Kind::Ident) {
      const auto kind = atom_kind(peek().text);
      if (!kind) error("unknown group kind '" + peek().text + "'");
      next();
      c.kind = Construction::Kind::Atom;
      c.atom = *kind;
      expect("(");
      c.params.push_back(integer());
      while (at_symbol(",")) {
        next();
        c.params.push_back(integer());
      }
      expect(")");
      check_atom(c.atom, c.params, begin);
    } else {
      error("expected a group");
    }
    if (at_symbol("^")) {
      next();
      const long k = integer();
      if (k < 1) throw SemanticError("direct power must be positive (at " + std::to_string(begin) + ")");
      if (c.power != 1) {
        Construction wrap;
        wrap.kind = Construction::Kind::DirectProduct;
        wrap.parts.push_back(std::move(c));
        c = std::move(wrap);
      }
      c.power = static_cast<int>(k);
    }
    c.begin = begin;
    c.end = last_end();
    return c;
  }

  std::vector<std::vector<std::vector<std::size_t>>> perm_list() {
    expect("[");
    std::vector<std::vector<std::vector<std::size_t>>> gens;
    for (;;) {
      std::vector<std::vector<std::size_t>> cycles;
      if (!at_symbol("(")) error("expected a cycle");
      while (at_symbol("(")) {
        next();
        std::vector<std::size_t> cyc;
        while (peek().kind == Token::Kind::Int) cyc.push_back(static_cast<std::size_t>(integer()));
        expect(")");
        if (!cyc.empty()) cycles.push_back(std::move(cyc));
      }
      gens.push_back(std::move(cycles));
      if (!at_symbol(",")) break;
      next();
    }
    expect("]");
    return gens;
  }

  int generator_name(const Token& t, std::size_t offset) const {
    const char ch = t.text[offset];
    if (ch < 'a' || ch > 'w') throw SyntaxError("bad generator name", t.pos + offset);
    return ch - 'a';
  }

  Word word() {
    Word w;
    if (peek().kind == Token::Kind::Int && peek().text == "1") {
      next();
      return w;
    }
    if (peek().kind != Token::Kind::Ident) error("expected a word");
    while (peek().kind == Token::Kind::Ident) {
      const Token t = next();
      for (std::size_t i = 0; i < t.text.size(); ++i) w.emplace_back(generator_name(t, i), 1);
      if (at_symbol("^")) {
        next();
        w.back().second = static_cast<int>(signed_integer());
      }
    }
    return w;
  }

  std::vector<long> matrix_row() {
    const bool list = at_symbol("-") || (peek(1).kind == Token::Kind::Symbol && peek(1).text == ",");
    std::vector<long> row;
    if (list) {
      row.push_back(signed_integer());
      while (at_symbol(",")) {
        next();
        if (peek().kind != Token::Kind::Int && !at_symbol("-")) break;
        row.push_back(signed_integer());
      }
    } else {
      for (char ch : next().text) row.push_back(ch - '0');
    }
    return row;
  }

  ActionSpec action() {
    ActionSpec a;
    const std::size_t pos = peek().pos;
    if (at_ident("act")) {
      next();
      a.kind = ActionSpec::Kind::GeneratorImages;
      if (at_symbol(";") || at_symbol("]")) return a;
      for (;;) {
        if (peek().kind != Token::Kind::Ident || peek().text.size() != 1) error("expected a generator");
        const int g = generator_name(next(), 0);
        for (const auto& [h, _] : a.images)
          if (h == g) throw SemanticError("generator mapped twice (at " + std::to_string(pos) + ")");
        expect("->");
        a.images.emplace_back(g, word());
        if (!at_symbol(",")) break;
        next();
      }
    } else if (at_ident("mat")) {
      next();
      a.kind = ActionSpec::Kind::IntegerMatrix;
      while (peek().kind == Token::Kind::Int || at_symbol("-")) a.matrix.push_back(matrix_row());
      if (a.matrix.empty()) error("expected matrix rows");
      for (const auto& row : a.matrix)
        if (row.size() != a.matrix.size())
          throw SemanticError("action matrix must be square (at " + std::to_string(pos) + ")");
    } else {
      error("expected 'act' or 'mat'");
    }
    return a;
  }

  std::vector<ActionSpec> action_block() {
    expect("[");
    std::vector<ActionSpec> out{action()};
    while (at_symbol(";")) {
      next();
      out.push_back(action());
    }
    expect("]");
    return out;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- printer

void print_word(std::ostream& os, const Word& w) {
  if (w.empty()) {
    os << '1';
    return;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << static_cast<char>('a' + w[i].first);
    if (w[i].second != 1) os << '^' << w[i].second;
  }
}

void print_action(std::ostream& os, const ActionSpec& a) {
  if (a.kind == ActionSpec::Kind::GeneratorImages) {
    os << "act";
    for (std::size_t i = 0; i < a.images.size(); ++i) {
      os << (i ? ", " : " ") << static_cast<char>('a' + a.images[i].first) << " -> ";
      print_word(os, a.images[i].second);
    }
    return;
  }
  os << "mat";
  for (const auto& row : a.matrix) {
    os << ' ';
    const bool digits = std::all_of(row.begin(), row.end(), [](long v) { return v >= 0 && v <= 9; });
    if (digits) {
      for (long v : row) os << v;
    } else {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      if (row.size() == 1) os << ',';
    }
  }
}

void print(std::ostream& os, const Construction& c, bool as_unit);

void print_body(std::ostream& os, const Construction& c) {
  switch (c.kind) {
    case Construction::Kind::Atom:
      os << atom_name(c.atom) << '(';
      for (std::size_t i = 0; i < c.params.size(); ++i) os << (i ? "," : "") << c.params[i];
      os << ')';
      break;
    case Construction::Kind::ExplicitPerms:
      os << "perm[";
      for (std::size_t i = 0; i < c.perm_generators.size(); ++i) {
        if (i) os << ", ";
        if (c.perm_generators[i].empty()) os << "()";
        for (const auto& cyc : c.perm_generators[i]) {
          os << '(';
          for (std::size_t j = 0; j < cyc.size(); ++j) os << (j ? " " : "") << cyc[j];
          os << ')';
        }
      }
      os << ']';
      break;
    case Construction::Kind::DirectProduct:
      for (std::size_t i = 0; i < c.parts.size(); ++i) {
        if (i) os << " x ";
        const auto& f = c.parts[i];
        const bool wrap = f.kind == Construction::Kind::DirectProduct && f.power == 1;
        if (wrap) os << '(';
        print(os, f, false);
        if (wrap) os << ')';
      }
      break;
    case Construction::Kind::Semidirect:
      print(os, c.parts[0], true);
      os << " : ";
      print(os, c.parts[1], true);
      os << " [";
      for (std::size_t i = 0; i < c.actions.size(); ++i) {
        if (i) os << "; ";
        print_action(os, c.actions[i]);
      }
      os << ']';
      break;
  }
}

// `as_unit`: the node appears where the grammar only admits a unit.
void print(std::ostream& os, const Construction& c, bool as_unit) {
  const bool simple = c.kind == Construction::Kind::Atom || c.kind == Construction::Kind::ExplicitPerms;
  const bool parens = !simple && (c.power != 1 || as_unit);
  if (parens) os << '(';
  print_body(os, c);
  if (parens) os << ')';
  if (c.power != 1) os << '^' << c.power;
}

// ---------------------------------------------------------------- atoms

std::vector<Perm> cyclic_gens(std::size_t n) {
  std::vector<std::size_t> cyc(n);
  std::iota(cyc.begin(), cyc.end(), 0);
  return {Perm::from_cycles(n, {cyc})};
}

RealizedGenerators from_images(std::size_t degree, const std::vector<std::vector<Point>>& imgs) {
  RealizedGenerators r;
  r.degree = degree;
  for (const auto& im : imgs) r.generators.emplace_back(im);
  return r;
}

RealizedGenerators dihedral(long order) {
  const auto m = static_cast<std::size_t>(order / 2);
  if (order == 2) return {2, cyclic_gens(2)};
  if (order == 4)
    return {4, {Perm::from_cycles(4, {{0, 1}, {2, 3}}), Perm::from_cycles(4, {{0, 2}, {1, 3}})}};
  std::vector<Point> r(m), s(m);
  for (std::size_t i = 0; i < m; ++i) {
    r[i] = static_cast<Point>((i + 1) % m);
    s[i] = static_cast<Point>((m - i) % m);
  }
  return from_images(m, {r, s});
}

// Right-regular representation of the dicyclic group <a, y | a^2m, y^2 = a^m, a^y = a^-1>,
// element a^i y^j stored at index i + 2m*j.
RealizedGenerators dicyclic(long order) {
  const long m = order / 4;
  const long n2 = 2 * m;
  const auto deg = static_cast<std::size_t>(order);
  std::vector<Point> a(deg), y(deg);
  for (long j = 0; j < 2; ++j)
    for (long i = 0; i < n2; ++i) {
      const auto p = static_cast<std::size_t>(i + n2 * j);
      const long step = j == 0 ? 1 : -1;
      a[p] = static_cast<Point>(((i + step) % n2 + n2) % n2 + n2 * j);
      y[p] = static_cast<Point>(j == 0 ? i + n2 : (i + m) % n2);
    }
  return from_images(deg, {a, y});
}

RealizedGenerators semidihedral(long order) {
  const auto n = static_cast<std::size_t>(order / 2);
  const std::size_t mult = n / 2 - 1;
  std::vector<Point> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = static_cast<Point>((i + 1) % n);
    b[i] = static_cast<Point>(i * mult % n);
  }
  return from_images(n, {a, b});
}

RealizedGenerators symmetric(long n) {
  const auto deg = static_cast<std::size_t>(n);
  if (n <= 2) return {deg, cyclic_gens(deg)};
  return {deg, {cyclic_gens(deg)[0], Perm::from_cycles(deg, {{0, 1}})}};
}

RealizedGenerators alternating(long n) {
  const auto deg = static_cast<std::size_t>(n);
  if (n <= 2) return {deg, {Perm::identity(deg)}};
  std::vector<Perm> gens{Perm::from_cycles(deg, {{0, 1, 2}})};
  if (n > 3) {
    std::vector<std::size_t> cyc;
    for (std::size_t i = (n % 2 == 0) ? 1 : 0; i < deg; ++i) cyc.push_back(i);
    gens.push_back(Perm::from_cycles(deg, {cyc}));
  }
  return {deg, gens};
}

long primitive_root(long q) {
  for (long g = 1; g < q; ++g) {
    long x = 1;
    long ord = 0;
    do {
      x = x * g % q;
      ++ord;
    } while (x != 1);
    if (ord == q - 1) return g;
  }
  return 1;
}

// GL/SL act on nonzero row vectors, PSL on normalized vectors (first nonzero
// coordinate 1). Vectors are encoded in base q, coordinate 0 least significant.
RealizedGenerators linear(AtomKind kind, long n, long q) {
  using Matrix = std::vector<std::vector<long>>;
  std::vector<Matrix> mats;
  auto identity = [&] {
    Matrix m(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
    for (long i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return m;
  };
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      if (i != j) {
        auto m = identity();
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
        mats.push_back(m);
      }
  if (kind == AtomKind::GL) {
    auto m = identity();
    m[0][0] = primitive_root(q);
    mats.push_back(m);
  }
  long total = 1;
  for (long i = 0; i < n; ++i) total *= q;
  auto decode = [&](long v) {
    std::vector<long> x(static_cast<std::size_t>(n));
    for (auto& c : x) {
      c = v % q;
      v /= q;
    }
    return x;
  };
  auto encode = [&](const std::vector<long>& x) {
    long v = 0;
    for (long i = n - 1; i >= 0; --i) v = v * q + x[static_cast<std::size_t>(i)];
    return v;
  };
  auto normalize = [&](std::vector<long> x) {
    long lead = 0;
    for (long c : x)
      if (c) {
        lead = c;
        break;
      }
    long inv = 1;
    while (lead * inv % q != 1) ++inv;
    for (auto& c : x) c = c * inv % q;
    return x;
  };
  std::vector<long> points;  // encoded vectors
  std::vector<long> slot(static_cast<std::size_t>(total), -1);
  for (long v = 1; v < total; ++v) {
    if (kind == AtomKind::PSL && normalize(decode(v)) != decode(v)) continue;
    slot[static_cast<std::size_t>(v)] = static_cast<long>(points.size());
    points.push_back(v);
  }
  if (mats.empty()) return {points.size(), {Perm::identity(points.size())}};
  std::vector<std::vector<Point>> imgs;
  for (const auto& m : mats) {
    std::vector<Point> im(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
      const auto x = decode(points[p]);
      std::vector<long> y(static_cast<std::size_t>(n), 0);
      for (long j = 0; j < n; ++j)
        for (long i = 0; i < n; ++i)
          y[static_cast<std::size_t>(j)] += x[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (auto& c : y) c %= q;
      if (kind == AtomKind::PSL) y = normalize(y);
      im[p] = static_cast<Point>(slot[static_cast<std::size_t>(encode(y))]);
    }
    imgs.push_back(std::move(im));
  }
  return from_images(points.size(), imgs);
}

RealizedGenerators realize_atom(const Construction& c) {
  const long p = c.params[0];
  switch (c.atom) {
    case AtomKind::C: return {static_cast<std::size_t>(p), cyclic_gens(static_cast<std::size_t>(p))};
    case AtomKind::D: return dihedral(p);
    case AtomKind::Q: return dicyclic(p);
    case AtomKind::QD: return semidihedral(p);
    case AtomKind::S: return symmetric(p);
    case AtomKind::A: return alternating(p);
    case AtomKind::SL:
    case AtomKind::GL:
    case AtomKind::PSL: return linear(c.atom, p, c.params[1]);
  }
  throw SemanticError("unknown atom");
}

// ---------------------------------------------------------------- products

RealizedGenerators direct(const std::vector<RealizedGenerators>& factors) {
  RealizedGenerators r;
  r.degree = 0;
  for (const auto& f : factors) r.degree += f.degree;
  if (r.degree > 65535) throw RealizationTooLarge("point set too large");
  std::size_t offset = 0;
  for (const auto& f : factors) {
    for (const auto& g : f.generators) r.generators.push_back(g.shifted(offset, r.degree));
    offset += f.degree;
  }
  if (r.degree == 0) r.degree = 1;
  return r;
}

GroupTable close_or_throw(const std::vector<Perm>& gens, std::size_t budget = GroupTable::kMaxOrder) {
  try {
    return GroupTable::close_generators(gens, budget);
  } catch (const ClosureBudgetExceeded& e) {
    throw RealizationTooLarge(e.what());
  }
}

int evaluate_word(const GroupTable& N, const std::vector<int>& gens, const Word& w) {
  int x = 0;
  for (const auto& [g, e] : w) {
    if (static_cast<std::size_t>(g) >= gens.size())
      throw SemanticError("action names generator '" + std::string(1, static_cast<char>('a' + g)) +
                          "' but the normal part has " + std::to_string(gens.size()) + " generators");
    x = N.mul(x, N.pow(gens[static_cast<std::size_t>(g)], e));
  }
  return x;
}

std::vector<int> action_images(const GroupTable& N, const std::vector<int>& gens, const ActionSpec& a) {
  std::vector<int> images = gens;
  if (a.kind == ActionSpec::Kind::GeneratorImages) {
    for (const auto& [g, w] : a.images) {
      if (static_cast<std::size_t>(g) >= gens.size())
        throw SemanticError("action maps generator '" + std::string(1, static_cast<char>('a' + g)) +
                            "' but the normal part has " + std::to_string(gens.size()) + " generators");
      images[static_cast<std::size_t>(g)] = evaluate_word(N, gens, w);
    }
    return images;
  }
  if (a.matrix.size() != gens.size())
    throw SemanticError("action matrix has size " + std::to_string(a.matrix.size()) +
                        " but the normal part has " + std::to_string(gens.size()) + " generators");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Word w;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (a.matrix[i][j] != 0) w.emplace_back(static_cast<int>(j), static_cast<int>(a.matrix[i][j]));
    images[i] = evaluate_word(N, gens, w);
  }
  return images;
}

RealizedGenerators semidirect(const Construction& c) {
  const auto normal = realize_generators(c.parts[0]);
  const auto actor = realize_generators(c.parts[1]);
  const GroupTable N = close_or_throw(normal.generators);
  const GroupTable H = close_or_throw(actor.generators);
  if (c.actions.size() > actor.generators.size())
    throw SemanticError("action block lists " + std::to_string(c.actions.size()) +
                        " actions for " + std::to_string(actor.generators.size()) + " acting generators");
  const std::size_t n = N.order();
  if (n * H.order() > GroupTable::kMaxOrder)
    throw RealizationTooLarge("semidirect product of order " + std::to_string(n * H.order()));

  std::vector<Perm> automorphisms;
  for (std::size_t j = 0; j < actor.generators.size(); ++j) {
    std::vector<int> images = N.generators();
    if (j < c.actions.size()) images = action_images(N, N.generators(), c.actions[j]);
    const auto map = extend_homomorphism(N, N, N.generators(), images, true);
    if (!map)
      throw ActionNotAutomorphism("action of acting generator " + std::to_string(j + 1) +
                                  " is not an automorphism of the normal part");
    std::vector<Point> im(n);
    for (std::size_t x = 0; x < n; ++x) im[x] = static_cast<Point>((*map)[x]);
    automorphisms.emplace_back(std::move(im));
  }

  std::optional<GroupTable> image;
  try {
    image.emplace(GroupTable::close_generators(automorphisms, H.order()));
  } catch (const ClosureBudgetExceeded&) {
    throw ActionNotAutomorphism("automorphisms generate more than the acting group");
  }
  std::vector<int> image_gens;
  for (const auto& a : automorphisms) image_gens.push_back(*image->index_of(a));
  if (!extend_homomorphism(H, *image, H.generators(), image_gens, false))
    throw ActionNotAutomorphism("action is not a homomorphism from the acting group");
  const bool faithful = image->order() == H.order();

  RealizedGenerators r;
  r.degree = n + (faithful ? 0 : actor.degree);
  for (int g : N.generators()) {
    std::vector<Point> im(r.degree);
    std::iota(im.begin(), im.end(), Point{0});
    for (std::size_t x = 0; x < n; ++x) im[x] = static_cast<Point>(N.mul(static_cast<int>(x), g));
    r.generators.emplace_back(std::move(im));
  }
  for (std::size_t j = 0; j < automorphisms.size(); ++j) {
    Perm p = automorphisms[j].extended(r.degree);
    if (!faithful) p = p * actor.generators[j].shifted(n, r.degree);
    r.generators.push_back(std::move(p));
  }
  return r;
}

RealizedGenerators realize_base(const Construction& c) {
  switch (c.kind) {
    case Construction::Kind::Atom: return realize_atom(c);
    case Construction::Kind::ExplicitPerms: {
      std::size_t deg = 1;
      for (const auto& g : c.perm_generators)
        for (const auto& cyc : g)
          for (std::size_t x : cyc) deg = std::max(deg, x + 1);
      RealizedGenerators r{deg, {}};
      for (const auto& g : c.perm_generators) {
        try {
          r.generators.push_back(Perm::from_cycles(deg, g));
        } catch (const std::invalid_argument& e) {
          throw SemanticError(std::string("bad permutation: ") + e.what());
        }
      }
      return r;
    }
    case Construction::Kind::DirectProduct: {
      std::vector<RealizedGenerators> fs;
      for (const auto& f : c.parts) fs.push_back(realize_generators(f));
      return direct(fs);
    }
    case Construction::Kind::Semidirect: return semidirect(c);
  }
  throw SemanticError("unknown construction");
}

}  // namespace

Construction parse_construction(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Construction& c) {
  std::ostringstream os;
  print(os, c, false);
  return os.str();
}

RealizedGenerators realize_generators(const Construction& c) {
  auto base = realize_base(c);
  if (c.power == 1) return base;
  return direct(std::vector<RealizedGenerators>(static_cast<std::size_t>(c.power), base));
}

GroupTable realize_construction(const Construction& c) {
  return close_or_throw(realize_generators(c).generators);
}

GroupTable realize(std::string_view text) { return realize_construction(parse_construction(text)); }

}  // namespace edlab
