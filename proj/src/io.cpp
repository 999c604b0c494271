#include "tropcount/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace tropcount {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Item {
  std::string text;
  std::size_t col = 0;
};

struct Token {
  std::string text;  // word, or the raw "( ... )" for vectors
  std::size_t col = 0;
  bool is_vector = false;
  std::vector<Item> items;
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string trim(std::string_view s, std::size_t& offset) {
  std::size_t b = 0;
  while (b < s.size() && is_space(s[b])) ++b;
  std::size_t e = s.size();
  while (e > b && is_space(s[e - 1])) --e;
  offset = b;
  return std::string(s.substr(b, e - b));
}

Line tokenize(std::string_view text, std::size_t number) {
  Line line{number, {}};
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (c == ')') throw ParseError(number, i + 1, "unmatched ')'");
    Token tok;
    tok.col = i + 1;
    if (c == '(') {
      const auto close = text.find(')', i);
      if (close == std::string_view::npos) throw ParseError(number, i + 1, "unclosed '('");
      tok.is_vector = true;
      tok.text = std::string(text.substr(i, close - i + 1));
      const std::string_view inner = text.substr(i + 1, close - i - 1);
      if (inner.find('(') != std::string_view::npos)
        throw ParseError(number, i + 2 + inner.find('('), "nested '(' in a vector");
      std::size_t start = 0;
      bool blank = true;
      for (char ch : inner) blank = blank && is_space(ch);
      if (!blank) {
        while (true) {
          const auto comma = inner.find(',', start);
          const auto piece = inner.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
          std::size_t off = 0;
          Item item{trim(piece, off), i + 2 + start};
          item.col += off;
          if (item.text.empty()) throw ParseError(number, item.col, "empty vector component");
          tok.items.push_back(std::move(item));
          if (comma == std::string_view::npos) break;
          start = comma + 1;
        }
      }
      i = close + 1;
    } else {
      std::size_t j = i;
      while (j < text.size() && !is_space(text[j]) && text[j] != '(' && text[j] != ')' && text[j] != '#') ++j;
      tok.text = std::string(text.substr(i, j - i));
      i = j;
    }
    line.tokens.push_back(std::move(tok));
  }
  return line;
}

bool looks_decimal(const std::string& s) {
  return s.find('.') != std::string::npos || s.find('e') != std::string::npos || s.find('E') != std::string::npos;
}

Integer parse_integer(const std::string& text, std::size_t line, std::size_t col, const char* what) {
  if (looks_decimal(text))
    throw ParseError(line, col, std::string("decimal literal '") + text + "' for " + what + "; only exact integers and fractions are accepted");
  Rational q;
  try {
    q = parse_fraction(text);
  } catch (const std::invalid_argument&) {
    throw ParseError(line, col, std::string("expected an integer for ") + what + ", found '" + text + "'");
  }
  if (q.get_den() != 1) throw ParseError(line, col, std::string("expected an integer for ") + what + ", found '" + text + "'");
  return q.get_num();
}

long parse_small(const std::string& text, std::size_t line, std::size_t col, const char* what) {
  const Integer z = parse_integer(text, line, col, what);
  if (!z.fits_slong_p() || z > 1000000000 || z < -1000000000)
    throw ParseError(line, col, std::string(what) + " is out of range");
  return z.get_si();
}

Rational parse_rational(const Item& item, std::size_t line, const char* what) {
  if (looks_decimal(item.text))
    throw ParseError(line, item.col, "decimal literal '" + item.text + "' for " + what + "; only exact integers and fractions are accepted");
  try {
    return parse_fraction(item.text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, item.col, std::string("bad ") + what + ": " + e.what());
  }
}

class Parser {
 public:
  explicit Parser(std::string_view doc) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= doc.size()) {
      const auto nl = doc.find('\n', pos);
      const auto text = doc.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      Line l = tokenize(text, ++number);
      if (!l.tokens.empty()) lines_.push_back(std::move(l));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  Problem run() {
    if (lines_.empty()) throw ParseError(1, 1, "empty document; expected '" + std::string(kProblemHeader) + "'");
    check_header(lines_.front());
    for (idx_ = 1; idx_ < lines_.size(); ++idx_) statement(lines_[idx_]);
    return assemble();
  }

 private:
  struct Pending {
    std::size_t line = 0;
    std::size_t col = 0;
  };

  void check_header(const Line& l) {
    const auto& t = l.tokens;
    if (t.size() != 2 || t[0].text != "tropcount-problem" || t[1].is_vector)
      throw ParseError(l.number, t[0].col, "expected header '" + std::string(kProblemHeader) + "'");
    if (t[1].text != "1") throw ParseError(l.number, t[1].col, "unsupported format version '" + t[1].text + "'");
  }

  static const Token& need(const Line& l, std::size_t k, const char* what) {
    if (k >= l.tokens.size()) {
      const auto& last = l.tokens.back();
      throw ParseError(l.number, last.col + last.text.size(), std::string("missing ") + what);
    }
    return l.tokens[k];
  }

  static const Token& need_word(const Line& l, std::size_t k, const char* what) {
    const auto& t = need(l, k, what);
    if (t.is_vector) throw ParseError(l.number, t.col, std::string("expected ") + what + ", found a vector");
    return t;
  }

  const Token& need_vector(const Line& l, std::size_t k, const char* what) const {
    const auto& t = need(l, k, what);
    if (!t.is_vector) throw ParseError(l.number, t.col, std::string("expected a vector for ") + what + ", found '" + t.text + "'");
    if (!ambient_) throw ParseError(l.number, t.col, "'ambient' must be declared before any vector");
    if (t.items.size() != *ambient_)
      throw ParseError(l.number, t.col,
                       std::string(what) + " has " + std::to_string(t.items.size()) + " entries, expected " + std::to_string(*ambient_));
    return t;
  }

  IntVector int_vector(const Line& l, std::size_t k, const char* what) const {
    const auto& t = need_vector(l, k, what);
    IntVector v;
    for (const auto& item : t.items) v.push_back(parse_integer(item.text, l.number, item.col, what));
    return v;
  }

  RatVector rat_vector(const Line& l, std::size_t k, const char* what) const {
    const auto& t = need_vector(l, k, what);
    RatVector v;
    for (const auto& item : t.items) v.push_back(parse_rational(item, l.number, what));
    return v;
  }

  static void no_more(const Line& l, std::size_t k) {
    if (k < l.tokens.size()) throw ParseError(l.number, l.tokens[k].col, "unexpected '" + l.tokens[k].text + "'");
  }

  Integer positive(const Line& l, std::size_t k, const char* what) {
    const auto& t = need_word(l, k, what);
    Integer w = parse_integer(t.text, l.number, t.col, what);
    if (w <= 0) throw ParseError(l.number, t.col, std::string(what) + " must be positive");
    return w;
  }

  int label(const Line& l, std::size_t k, const char* what) {
    const auto& t = need_word(l, k, what);
    const long v = parse_small(t.text, l.number, t.col, what);
    if (v < 1) throw ParseError(l.number, t.col, std::string(what) + " must be at least 1");
    return static_cast<int>(v);
  }

  void statement(const Line& l) {
    const auto& head = l.tokens.front();
    if (head.is_vector) throw ParseError(l.number, head.col, "expected a keyword, found a vector");
    const std::string& kw = head.text;
    if (in_type_) {
      type_statement(l);
      return;
    }
    if (kw == "ambient") {
      if (ambient_) throw ParseError(l.number, head.col, "'ambient' declared twice");
      const auto& t = need_word(l, 1, "ambient rank");
      const long n = parse_small(t.text, l.number, t.col, "ambient rank");
      if (n < 1) throw ParseError(l.number, t.col, "ambient rank must be positive");
      ambient_ = static_cast<std::size_t>(n);
      no_more(l, 2);
    } else if (kw == "genus") {
      if (genus_) throw ParseError(l.number, head.col, "'genus' declared twice");
      const auto& t = need_word(l, 1, "genus");
      const long g = parse_small(t.text, l.number, t.col, "genus");
      if (g < 0) throw ParseError(l.number, t.col, "genus must be non-negative");
      genus_ = static_cast<int>(g);
      no_more(l, 2);
    } else if (kw == "end") {
      end_statement(l);
    } else if (kw == "marking") {
      marking_statement(l);
    } else if (kw == "boundary") {
      boundary_statement(l);
    } else if (kw == "type") {
      no_more(l, 1);
      if (!ambient_) throw ParseError(l.number, head.col, "'ambient' must be declared before a type");
      in_type_ = true;
      type_ = TypeDraft{};
      type_.line = l.number;
    } else if (kw == "endtype") {
      throw ParseError(l.number, head.col, "'endtype' without 'type'");
    } else {
      throw ParseError(l.number, head.col, "unknown keyword '" + kw + "'");
    }
  }

  void end_statement(const Line& l) {
    const int lab = label(l, 1, "end label");
    if (ends_.count(lab)) throw ParseError(l.number, l.tokens[1].col, "end " + std::to_string(lab) + " declared twice");
    DegreeEntry e;
    e.label = lab;
    e.direction = int_vector(l, 2, "end direction");
    if (is_zero(e.direction)) throw ParseError(l.number, l.tokens[2].col, "end direction is zero");
    Integer g = 0;
    for (const auto& x : e.direction) g = gcd(g, x);
    if (g != 1) throw ParseError(l.number, l.tokens[2].col, "end direction " + format_vector(e.direction) + " is not primitive");
    std::size_t k = 3;
    if (k < l.tokens.size() && l.tokens[k].text == "weight") {
      e.weight = positive(l, k + 1, "end weight");
      k += 2;
    }
    no_more(l, k);
    ends_[lab] = {std::move(e), {l.number, l.tokens[0].col}};
  }

  // "at (p) [span (v)]... [psi s] [weight w]" from token k on.
  struct LocusSpec {
    RatVector base;
    std::vector<IntVector> span;
    Integer weight = 1;
    std::optional<int> psi;
  };

  LocusSpec locus(const Line& l, std::size_t k, bool allow_psi) {
    LocusSpec s;
    const auto& kw = need_word(l, k, "'at' or 'free'");
    if (kw.text == "free") {
      if (!allow_psi) throw ParseError(l.number, kw.col, "'free' is only allowed for markings");
      s.base = RatVector(*ambient_, Rational(0));
      for (std::size_t i = 0; i < *ambient_; ++i) {
        IntVector e(*ambient_);
        e[i] = 1;
        s.span.push_back(std::move(e));
      }
      ++k;
    } else if (kw.text == "at") {
      s.base = rat_vector(l, k + 1, "base point");
      k += 2;
      while (k < l.tokens.size() && l.tokens[k].text == "span") {
        s.span.push_back(int_vector(l, k + 1, "span vector"));
        k += 2;
      }
    } else {
      throw ParseError(l.number, kw.col, "expected 'at' or 'free', found '" + kw.text + "'");
    }
    bool seen_weight = false;
    while (k < l.tokens.size()) {
      const auto& t = l.tokens[k];
      if (t.text == "psi" && allow_psi && !s.psi) {
        const auto& v = need_word(l, k + 1, "psi exponent");
        const long p = parse_small(v.text, l.number, v.col, "psi exponent");
        if (p < 0) throw ParseError(l.number, v.col, "psi exponent must be non-negative");
        s.psi = static_cast<int>(p);
      } else if (t.text == "weight" && !seen_weight) {
        s.weight = positive(l, k + 1, "cell weight");
        seen_weight = true;
      } else {
        throw ParseError(l.number, t.col, "unexpected '" + t.text + "'");
      }
      k += 2;
    }
    return s;
  }

  AffineSubspace make_subspace(const Line& l, LocusSpec s) {
    try {
      return AffineSubspace(std::move(s.base), s.span, std::move(s.weight));
    } catch (const std::exception& e) {
      throw ParseError(l.number, l.tokens[0].col, e.what());
    }
  }

  void marking_statement(const Line& l) {
    const int lab = label(l, 1, "marking label");
    if (markings_.count(lab)) throw ParseError(l.number, l.tokens[1].col, "marking " + std::to_string(lab) + " declared twice");
    LocusSpec s = locus(l, 2, true);
    const int psi = s.psi.value_or(0);
    markings_[lab] = {MarkingCondition{make_subspace(l, std::move(s)), psi}, {l.number, l.tokens[0].col}};
  }

  void boundary_statement(const Line& l) {
    const int lab = label(l, 1, "end label");
    if (boundary_.count(lab))
      throw ParseError(l.number, l.tokens[1].col, "end " + std::to_string(lab) + " has two boundary conditions");
    LocusSpec s = locus(l, 2, false);
    boundary_[lab] = {BoundaryCondition{lab, make_subspace(l, std::move(s))}, {l.number, l.tokens[0].col}};
  }

  struct TypeDraft {
    std::size_t line = 0;
    std::optional<std::size_t> vertices;
    std::vector<CompactEdge> edges;
    std::vector<EndAttachment> ends;
    std::map<int, std::size_t> markings;
  };

  std::size_t vertex_index(const Line& l, std::size_t k) {
    const auto& t = need_word(l, k, "vertex index");
    if (!type_.vertices) throw ParseError(l.number, t.col, "'vertices' must come first in a type");
    const long v = parse_small(t.text, l.number, t.col, "vertex index");
    if (v < 0 || static_cast<std::size_t>(v) >= *type_.vertices)
      throw ParseError(l.number, t.col, "vertex index " + t.text + " out of range 0.." + std::to_string(*type_.vertices - 1));
    return static_cast<std::size_t>(v);
  }

  void type_statement(const Line& l) {
    const auto& head = l.tokens.front();
    const std::string& kw = head.text;
    if (kw == "vertices") {
      if (type_.vertices) throw ParseError(l.number, head.col, "'vertices' declared twice");
      const auto& t = need_word(l, 1, "vertex count");
      const long v = parse_small(t.text, l.number, t.col, "vertex count");
      if (v < 1) throw ParseError(l.number, t.col, "a type needs at least one vertex");
      type_.vertices = static_cast<std::size_t>(v);
      no_more(l, 2);
    } else if (kw == "edge") {
      CompactEdge e;
      e.tail = vertex_index(l, 1);
      e.head = vertex_index(l, 2);
      e.direction = int_vector(l, 3, "edge direction");
      std::size_t k = 4;
      if (k < l.tokens.size() && l.tokens[k].text == "weight") {
        e.weight = positive(l, k + 1, "edge weight");
        k += 2;
      }
      no_more(l, k);
      type_.edges.push_back(std::move(e));
    } else if (kw == "end" || kw == "marking") {
      const int lab = label(l, 1, kw == "end" ? "end label" : "marking label");
      const auto& at = need_word(l, 2, "'at'");
      if (at.text != "at") throw ParseError(l.number, at.col, "expected 'at', found '" + at.text + "'");
      const std::size_t v = vertex_index(l, 3);
      no_more(l, 4);
      if (kw == "end") {
        for (const auto& e : type_.ends)
          if (e.label == lab) throw ParseError(l.number, l.tokens[1].col, "end " + std::to_string(lab) + " attached twice");
        type_.ends.push_back({v, lab});
      } else {
        if (!type_.markings.emplace(lab, v).second)
          throw ParseError(l.number, l.tokens[1].col, "marking " + std::to_string(lab) + " placed twice");
      }
    } else if (kw == "endtype") {
      no_more(l, 1);
      if (!type_.vertices) throw ParseError(l.number, head.col, "type has no 'vertices' line");
      in_type_ = false;
      types_.push_back(std::move(type_));
    } else {
      throw ParseError(l.number, head.col, "unknown keyword '" + kw + "' inside a type");
    }
  }

  template <class T>
  static void check_contiguous(const std::map<int, std::pair<T, Pending>>& m, const char* what) {
    int expect = 1;
    for (const auto& [lab, entry] : m) {
      if (lab != expect)
        throw ParseError(entry.second.line, entry.second.col,
                         std::string(what) + " labels must be 1.." + std::to_string(m.size()) + "; " + std::to_string(expect) + " is missing");
      ++expect;
    }
  }

  Problem assemble() {
    const std::size_t last = lines_.back().number;
    if (in_type_) throw ParseError(type_.line, 1, "type is not closed by 'endtype'");
    if (!ambient_) throw ParseError(last, 1, "missing 'ambient'");
    if (ends_.empty()) throw ParseError(last, 1, "no 'end' declarations");
    check_contiguous(ends_, "end");
    check_contiguous(markings_, "marking");
    Problem p;
    p.ambient = *ambient_;
    p.genus = genus_.value_or(0);
    std::vector<DegreeEntry> entries;
    for (const auto& [lab, entry] : ends_) entries.push_back(entry.first);
    try {
      p.degree = Degree(entries);
    } catch (const std::invalid_argument& e) {
      const auto& first = ends_.begin()->second.second;
      throw ParseError(first.line, first.col, e.what());
    }
    if (!is_zero(p.degree.total())) {
      const auto& first = ends_.begin()->second.second;
      throw ParseError(first.line, first.col,
                       "ends are not balanced: sum of weighted directions is " + format_vector(p.degree.total()));
    }
    for (const auto& [lab, entry] : markings_) p.markings.push_back(entry.first);
    for (const auto& [lab, entry] : boundary_) {
      if (static_cast<std::size_t>(lab) > p.degree.size())
        throw ParseError(entry.second.line, entry.second.col, "boundary condition names unknown end " + std::to_string(lab));
      p.boundary.push_back(entry.first);
    }
    for (const auto& d : types_) {
      CombinatorialType t;
      t.ambient = p.ambient;
      t.vertex_count = *d.vertices;
      t.degree = p.degree;
      t.edges = d.edges;
      t.ends = d.ends;
      int expect = 1;
      for (const auto& [lab, v] : d.markings) {
        if (lab != expect) throw ParseError(d.line, 1, "type marking labels must be 1..m; " + std::to_string(expect) + " is missing");
        t.marking_vertex.push_back(v);
        ++expect;
      }
      p.user_types.push_back(std::move(t));
    }
    check_well_formed(p);
    check_dimension(p);
    return p;
  }

  std::vector<Line> lines_;
  std::size_t idx_ = 0;
  std::optional<std::size_t> ambient_;
  std::optional<int> genus_;
  std::map<int, std::pair<DegreeEntry, Pending>> ends_;
  std::map<int, std::pair<MarkingCondition, Pending>> markings_;
  std::map<int, std::pair<BoundaryCondition, Pending>> boundary_;
  bool in_type_ = false;
  TypeDraft type_;
  std::vector<TypeDraft> types_;
};

// Exactly the locus the parser builds for "free".
bool is_free(const AffineSubspace& a) {
  if (a.weight() != 1 || a.span().size() != a.ambient()) return false;
  for (std::size_t r = 0; r < a.span().size(); ++r) {
    if (a.base()[r] != 0) return false;
    for (std::size_t c = 0; c < a.ambient(); ++c)
      if (a.span()[r][c] != (r == c ? 1 : 0)) return false;
  }
  return true;
}

void emit_locus(std::ostream& os, const AffineSubspace& a) {
  os << " at " << format_vector(a.base());
  for (const auto& v : a.span()) os << " span " << format_vector(v);
}

}  // namespace

Problem parse_problem(std::string_view document) { return Parser(document).run(); }

Problem read_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string emit_problem(const Problem& p) {
  std::ostringstream os;
  os << kProblemHeader << '\n';
  os << "ambient " << p.ambient << '\n';
  os << "genus " << p.genus << '\n';
  for (const auto& e : p.degree.entries()) {
    os << "end " << e.label << ' ' << format_vector(e.direction);
    if (e.weight != 1) os << " weight " << e.weight.get_str();
    os << '\n';
  }
  for (std::size_t i = 0; i < p.markings.size(); ++i) {
    const auto& m = p.markings[i];
    os << "marking " << i + 1;
    if (is_free(m.locus))
      os << " free";
    else
      emit_locus(os, m.locus);
    os << " psi " << m.psi;
    if (m.locus.weight() != 1) os << " weight " << m.locus.weight().get_str();
    os << '\n';
  }
  for (const auto& b : p.boundary) {
    os << "boundary " << b.label;
    emit_locus(os, b.locus);
    if (b.locus.weight() != 1) os << " weight " << b.locus.weight().get_str();
    os << '\n';
  }
  for (const auto& t : p.user_types) {
    os << "type\n";
    os << "  vertices " << t.vertex_count << '\n';
    for (const auto& e : t.edges) {
      os << "  edge " << e.tail << ' ' << e.head << ' ' << format_vector(e.direction);
      if (e.weight != 1) os << " weight " << e.weight.get_str();
      os << '\n';
    }
    for (const auto& e : t.ends) os << "  end " << e.label << " at " << e.vertex << '\n';
    for (std::size_t i = 0; i < t.marking_vertex.size(); ++i) os << "  marking " << i + 1 << " at " << t.marking_vertex[i] << '\n';
    os << "endtype\n";
  }
  return os.str();
}

std::string format_type(const CombinatorialType& t) {
  std::ostringstream os;
  os << "  vertices " << t.vertex_count << ", bounded edges " << t.edges.size() << ", genus " << genus(t) << '\n';
  for (std::size_t v = 0; v < t.vertex_count; ++v) {
    os << "  vertex " << v << ":";
    const auto marks = t.marking_labels_at(v);
    if (!marks.empty()) {
      os << " markings";
      for (int m : marks) os << ' ' << m;
    }
    std::vector<int> ends;
    for (const auto& e : t.ends)
      if (e.vertex == v) ends.push_back(e.label);
    std::sort(ends.begin(), ends.end());
    if (!ends.empty()) {
      os << " ends";
      for (int e : ends) os << ' ' << e;
    }
    os << '\n';
  }
  for (const auto& e : t.edges) {
    os << "  edge " << e.tail << " -> " << e.head << " direction " << format_vector(e.direction);
    if (e.weight != 1) os << " weight " << e.weight.get_str();
    os << '\n';
  }
  return os.str();
}

std::string format_catalog(const TypeCatalog& catalog) {
  std::ostringstream os;
  os << "types: " << catalog.size() << '\n';
  for (std::size_t i = 0; i < catalog.entries.size(); ++i) {
    os << "type " << i + 1 << '\n';
    os << format_type(catalog.entries[i].type);
  }
  return os.str();
}

namespace {

std::string mult_formula(const Contribution& c) {
  std::ostringstream os;
  os << format_fraction(c.mult) << " = index " << c.index_phi.get_str() << " * vertex factors";
  if (c.vertex_factors.empty()) os << " (none)";
  for (const auto& f : c.vertex_factors) os << ' ' << f.get_str();
  os << " * edge weights " << c.edge_weight_product.get_str() << " * cell weights " << c.constraint_weight_product.get_str()
     << " / aut " << c.aut.get_str();
  return os.str();
}

}  // namespace

std::string format_report_text(const CountReport& r, const ReportOptions& options) {
  std::ostringstream os;
  const auto& p = r.problem;
  os << "problem: n=" << p.ambient << " g=" << p.genus << " e_inf=" << p.degree.size() << " m=" << p.markings.size() << '\n';
  os << "candidate types: " << r.candidate_types << '\n';
  os << "contributions: " << r.contributions.size() << '\n';
  for (std::size_t i = 0; i < r.contributions.size(); ++i) {
    const auto& c = r.contributions[i];
    const auto& t = c.curve.type;
    os << "contribution " << i + 1 << ": mult " << mult_formula(c) << '\n';
    for (std::size_t v = 0; v < t.vertex_count; ++v) {
      os << "  vertex " << v << " at " << format_vector(c.curve.positions[v]);
      const auto marks = t.marking_labels_at(v);
      if (!marks.empty()) {
        os << " markings";
        for (int m : marks) os << ' ' << m;
      }
      os << '\n';
    }
    for (std::size_t k = 0; k < t.edges.size(); ++k) {
      const auto& e = t.edges[k];
      os << "  edge " << e.tail << " -> " << e.head << " direction " << format_vector(e.direction) << " weight "
         << e.weight.get_str() << " length " << format_fraction(c.curve.lengths[k]) << '\n';
    }
    os << "  ends";
    for (const auto& e : t.ends) os << ' ' << e.label << '@' << e.vertex;
    os << '\n';
  }
  for (const auto& w : r.warnings) os << "warning: " << w << '\n';
  os << "total " << format_fraction(r.total) << '\n';
  if (options.unlabeled) {
    const Integer aut = aut_delta(p.degree);
    os << "unlabeled total " << format_fraction(r.total / Rational(aut)) << " (|Aut(Delta)| = " << aut.get_str() << ")\n";
  }
  return os.str();
}

std::string format_report_json(const CountReport& r, const ReportOptions& options) {
  using json = nlohmann::ordered_json;
  auto ints = [](const IntVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
  };
  auto rats = [](const RatVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(format_fraction(x));
    return a;
  };
  json doc;
  doc["schema"] = kReportSchema;
  doc["problem"] = emit_problem(r.problem);
  doc["vertexless"] = r.vertexless;
  doc["candidate_types"] = r.candidate_types;
  json contributions = json::array();
  for (const auto& c : r.contributions) {
    const auto& t = c.curve.type;
    json jc;
    jc["key"] = c.key;
    json vertices = json::array();
    for (std::size_t v = 0; v < t.vertex_count; ++v)
      vertices.push_back({{"index", v}, {"position", rats(c.curve.positions[v])}, {"markings", t.marking_labels_at(v)}});
    jc["vertices"] = std::move(vertices);
    json edges = json::array();
    for (std::size_t k = 0; k < t.edges.size(); ++k) {
      const auto& e = t.edges[k];
      edges.push_back({{"tail", e.tail},
                       {"head", e.head},
                       {"direction", ints(e.direction)},
                       {"weight", e.weight.get_str()},
                       {"length", format_fraction(c.curve.lengths[k])}});
    }
    jc["edges"] = std::move(edges);
    json ends = json::array();
    for (const auto& e : t.ends) {
      const auto& d = t.degree.at_label(e.label);
      ends.push_back({{"label", e.label}, {"vertex", e.vertex}, {"direction", ints(d.direction)}, {"weight", d.weight.get_str()}});
    }
    jc["ends"] = std::move(ends);
    json factors = json::array();
    for (const auto& f : c.vertex_factors) factors.push_back(f.get_str());
    jc["multiplicity"] = {{"index", c.index_phi.get_str()},
                          {"vertex_factors", std::move(factors)},
                          {"edge_weight_product", c.edge_weight_product.get_str()},
                          {"constraint_weight_product", c.constraint_weight_product.get_str()},
                          {"aut", c.aut.get_str()},
                          {"mult", format_fraction(c.mult)}};
    contributions.push_back(std::move(jc));
  }
  doc["contributions"] = std::move(contributions);
  doc["warnings"] = r.warnings;
  doc["total"] = format_fraction(r.total);
  if (options.unlabeled) {
    const Integer aut = aut_delta(r.problem.degree);
    doc["aut_delta"] = aut.get_str();
    doc["unlabeled_total"] = format_fraction(r.total / Rational(aut));
  }
  return doc.dump(2) + "\n";
}

}  // namespace tropcount
