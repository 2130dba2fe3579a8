#include "monobn/mbn.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace monobn {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$' ||
         c == '\'' || c == '+';
}

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
           line[j] != '#')
      ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

class Parser {
 public:
  NetworkDraft run(std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
      ++line_no;
      const auto nl = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      line_ = line_no;
      parse_line(tokenize(line));
    }
    return std::move(draft_);
  }

 private:
  [[noreturn]] void fail(std::size_t column, const std::string& what) const {
    throw ParseError(line_, column, what);
  }

  std::string name(const Token& t) const {
    for (char c : t.text)
      if (!is_name_char(c)) fail(t.column, "invalid character in name '" + std::string(t.text) + "'");
    return std::string(t.text);
  }

  double number(const Token& t) const {
    double value = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
      fail(t.column, "expected a probability, got '" + std::string(t.text) + "'");
    return value;
  }

  void parse_line(const std::vector<Token>& tok) {
    if (tok.empty()) return;
    const std::string_view keyword = tok[0].text;
    if (keyword == "var") {
      if (tok.size() < 3 || tok[2].text != ":")
        fail(tok[0].column, "expected 'var <name> : <value> <value> ...'");
      Variable var{name(tok[1]), {}};
      for (std::size_t i = 3; i < tok.size(); ++i) var.values.push_back(name(tok[i]));
      draft_.variables.push_back(std::move(var));
      current_cpt_ = nullptr;
    } else if (keyword == "role") {
      if (tok.size() < 3) fail(tok[0].column, "expected 'role <kind> <name> ...'");
      const auto role = parse_role(tok[1].text);
      if (!role)
        fail(tok[1].column, "unknown role '" + std::string(tok[1].text) +
                                "' (observable, intermediate, output)");
      for (std::size_t i = 2; i < tok.size(); ++i) draft_.roles.push_back({name(tok[i]), *role});
      current_cpt_ = nullptr;
    } else if (keyword == "arc") {
      if (tok.size() != 4 || tok[2].text != "->")
        fail(tok[0].column, "expected 'arc <parent> -> <child>'");
      draft_.arcs.push_back({name(tok[1]), name(tok[3])});
      current_cpt_ = nullptr;
    } else if (keyword == "cpt") {
      if (tok.size() != 2) fail(tok[0].column, "expected 'cpt <name>'");
      draft_.cpts.push_back({name(tok[1]), {}});
      current_cpt_ = &draft_.cpts.back();
    } else if (keyword == "row") {
      if (!current_cpt_) fail(tok[0].column, "'row' outside of a cpt block");
      if (tok.size() < 2) fail(tok[0].column, "empty row");
      std::vector<double> row;
      for (std::size_t i = 1; i < tok.size(); ++i) row.push_back(number(tok[i]));
      current_cpt_->rows.push_back(std::move(row));
    } else {
      fail(tok[0].column, "unknown keyword '" + std::string(keyword) + "'");
    }
  }

  NetworkDraft draft_;
  NetworkDraft::CptEntry* current_cpt_ = nullptr;
  std::size_t line_ = 0;
};

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", p);
  return buf;
}

}  // namespace

NetworkDraft parse_mbn_draft(std::string_view text) {
  return Parser{}.run(text);
}

Network parse_mbn(std::string_view text) { return Network::from_draft(parse_mbn_draft(text)); }

std::string serialize_mbn(const Network& net) {
  std::ostringstream os;
  for (const Variable& v : net.variables()) {
    os << "var " << v.name << " :";
    for (const auto& label : v.values) os << ' ' << label;
    os << '\n';
  }
  for (VarId v = 0; v < net.size(); ++v)
    os << "role " << to_string(net.role(v)) << ' ' << net.variable(v).name << '\n';
  for (auto [p, c] : net.arcs())
    os << "arc " << net.variable(p).name << " -> " << net.variable(c).name << '\n';
  for (VarId v = 0; v < net.size(); ++v) {
    os << "cpt " << net.variable(v).name << '\n';
    const Cpt& cpt = net.cpt(v);
    for (std::size_t r = 0; r < cpt.row_count(); ++r) {
      os << "row";
      for (double p : cpt.row(r)) os << ' ' << format_probability(p);
      os << '\n';
    }
  }
  return os.str();
}

Network load_mbn_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_mbn(buffer.str());
}

void save_mbn_file(const Network& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize_mbn(net);
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace monobn
