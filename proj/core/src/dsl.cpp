#include "finsler/dsl.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace finsler {

namespace {

struct Token {
  enum class Kind { Number, Ident, Punct, End } kind;
  std::string text;
  double num = 0;
  int line = 1, col = 1;
  std::size_t offset = 0;  // byte offset of the token start
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }
  /// Jump past a byte offset (used after sum-body expansion).
  void resume_at(std::size_t byte_pos) {
    while (tok_.kind != Token::Kind::End && tok_.offset < byte_pos) advance();
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
    tok_.line = line_;
    tok_.col = col_;
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text = "<end>";
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        bump();
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        const std::size_t save = pos_;
        const int sl = line_, sc = col_;
        bump();
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) bump();
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
        } else {
          pos_ = save;
          line_ = sl;
          col_ = sc;
        }
      }
      tok_.kind = Token::Kind::Number;
      tok_.text = src_.substr(start, pos_ - start);
      try {
        tok_.num = std::stod(tok_.text);
      } catch (...) {
        throw ParseError("bad numeric literal '" + tok_.text + "'", tok_.line, tok_.col);
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        bump();
      tok_.kind = Token::Kind::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    tok_.kind = Token::Kind::Punct;
    tok_.text = std::string(1, c);
    bump();
  }
  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

std::string capture_balanced(const std::string& src, std::size_t from, std::size_t& end_out,
                             int line0, int col0) {
  int depth = 0;
  for (std::size_t i = from; i < src.size(); ++i) {
    const char c = src[i];
    if (c == '(') ++depth;
    else if (c == ')') {
      if (depth == 0) {
        end_out = i;
        return src.substr(from, i - from);
      }
      --depth;
    }
  }
  throw ParseError("sum: missing closing ')'", line0, col0);
}

class Parser {
 public:
  Parser(std::string text, int dim, const std::map<std::string, double>& params,
         std::map<std::string, int> bound = {})
      : src_(std::move(text)), lex_(src_), dim_(dim), params_(params), bound_(std::move(bound)) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::End)
      throw ParseError("unexpected trailing input '" + t.text + "'", t.line, t.col);
    return e;
  }

 private:
  bool punct(const char* p) {
    const Token& t = lex_.peek();
    return t.kind == Token::Kind::Punct && t.text == p;
  }
  void expect(const char* p) {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::Punct || t.text != p)
      throw ParseError(std::string("expected '") + p + "', got '" + t.text + "'", t.line, t.col);
  }

  ExprPtr expr() {
    ExprPtr e;
    if (punct("-")) {
      lex_.take();
      e = ex::neg(term());
    } else {
      e = term();
    }
    while (punct("+") || punct("-")) {
      const bool plus = lex_.take().text == "+";
      ExprPtr rhs = term();
      e = plus ? ex::add(e, rhs) : ex::sub(e, rhs);
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (punct("*") || punct("/")) {
      const bool times = lex_.take().text == "*";
      ExprPtr rhs = factor();
      e = times ? ex::mul(e, rhs) : ex::div(e, rhs);
    }
    return e;
  }

  ExprPtr factor() {
    ExprPtr b = base();
    if (punct("^")) {
      lex_.take();
      bool negexp = false;
      if (punct("-")) {
        lex_.take();
        negexp = true;
      }
      const Token t = lex_.take();
      if (t.kind != Token::Kind::Number || t.text.find('.') != std::string::npos)
        throw ParseError("exponent must be an integer", t.line, t.col);
      b = ex::pow_int(b, negexp ? -static_cast<int>(t.num) : static_cast<int>(t.num));
    }
    return b;
  }

  int index_arg() {
    expect("[");
    const Token t = lex_.take();
    int idx;
    if (t.kind == Token::Kind::Number && t.text.find('.') == std::string::npos) {
      idx = static_cast<int>(t.num);
    } else if (t.kind == Token::Kind::Ident && bound_.count(t.text)) {
      idx = bound_.at(t.text);
    } else {
      throw ParseError("expected index (integer or bound sum variable), got '" + t.text + "'",
                       t.line, t.col);
    }
    expect("]");
    if (idx < 1 || idx > dim_)
      throw ParseError("index " + std::to_string(idx) + " out of range 1.." + std::to_string(dim_),
                       t.line, t.col);
    return idx - 1;
  }

  ExprPtr base() {
    const Token t = lex_.take();
    if (t.kind == Token::Kind::Number) return ex::constant(t.num);
    if (t.kind == Token::Kind::Punct && t.text == "(") {
      ExprPtr e = expr();
      expect(")");
      return e;
    }
    if (t.kind != Token::Kind::Ident)
      throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);

    const std::string& id = t.text;
    if (id == "i") return ex::constant(cplx(0, 1));
    if (id == "z") return ex::z(index_arg());
    if (id == "zbar") return ex::zbar(index_arg());
    if (id == "eta") return ex::eta(index_arg());
    if (id == "etabar") return ex::etabar(index_arg());
    if (id == "sqrt" || id == "abs2" || id == "log" || id == "conj") {
      expect("(");
      ExprPtr a = expr();
      expect(")");
      if (id == "sqrt") return ex::sqrt(a);
      if (id == "abs2") return ex::abs2(a);
      if (id == "log") return ex::log(a);
      return ex::conj(a);
    }
    if (id == "sum") return parse_sum(t);
    auto it = params_.find(id);
    if (it != params_.end()) return ex::constant(it->second);
    throw ParseError("unknown symbol '" + id + "'", t.line, t.col);
  }

  /// sum(k, body): capture the body text and parse it once per index value.
  ExprPtr parse_sum(const Token& head) {
    expect("(");
    const Token v = lex_.take();
    if (v.kind != Token::Kind::Ident)
      throw ParseError("sum: expected index variable", v.line, v.col);
    if (bound_.count(v.text) || params_.count(v.text))
      throw ParseError("sum: index '" + v.text + "' shadows an existing name", v.line, v.col);
    expect(",");
    const std::size_t from = lex_.peek().offset;
    std::size_t end = 0;
    const std::string body = capture_balanced(src_, from, end, head.line, head.col);
    ExprPtr acc = ex::constant(0);
    for (int kv = 1; kv <= dim_; ++kv) {
      std::map<std::string, int> inner = bound_;
      inner[v.text] = kv;
      Parser sub(body, dim_, params_, std::move(inner));
      acc = ex::add(acc, sub.parse_all());
    }
    lex_.resume_at(end);
    expect(")");
    return acc;
  }

  std::string src_;
  Lexer lex_;
  int dim_;
  const std::map<std::string, double>& params_;
  std::map<std::string, int> bound_;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

ExprPtr parse_expr(const std::string& text, int dim, const std::map<std::string, double>& params) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw ParseError("empty expression", 1, 1);
  Parser p(text, dim, params);
  return p.parse_all();
}

MetricExpr parse_metric_string(const std::string& text, const std::string& source_name) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool any = false;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value' in metric file " + source_name, lineno, 1);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    any = true;
  }
  if (!any) throw ParseError("metric file " + source_name + " is empty", 1, 1);
  for (const char* req : {"name", "dim", "form", "domain", "body"})
    if (!kv.count(req))
      throw ParseError("metric file " + source_name + " missing field '" + std::string(req) + "'",
                       1, 1);

  int dim;
  try {
    dim = std::stoi(kv["dim"]);
  } catch (...) {
    throw ParseError("bad dim '" + kv["dim"] + "'", 1, 1);
  }
  MetricForm form;
  if (kv["form"] == "L") form = MetricForm::L;
  else if (kv["form"] == "F") form = MetricForm::F;
  else throw ParseError("form must be L or F, got '" + kv["form"] + "'", 1, 1);

  auto dom = Domain::parse(kv["domain"]);
  if (!dom) throw ParseError("bad domain '" + kv["domain"] + "'", 1, 1);

  std::map<std::string, double> params;
  if (kv.count("params")) {
    std::istringstream ps(kv["params"]);
    std::string item;
    while (std::getline(ps, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("bad params entry '" + item + "'", 1, 1);
      try {
        params[trim(item.substr(0, eq))] = std::stod(trim(item.substr(eq + 1)));
      } catch (...) {
        throw ParseError("bad params value in '" + item + "'", 1, 1);
      }
    }
  }

  ExprPtr body = parse_expr(kv["body"], dim, params);
  return MetricExpr(kv["name"], dim, form, *dom, std::move(body), std::move(params));
}

MetricExpr parse_metric_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open metric file '" + path + "'", 1, 1);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_metric_string(ss.str(), path);
}

}  // namespace finsler
