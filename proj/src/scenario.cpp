#include "wco/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace wco {

// ----- TOML subset reader ---------------------------------------------------

namespace {

class TomlParser {
 public:
  explicit TomlParser(const std::string& text) : text_(text) {}

  nlohmann::json parse() {
    root_ = nlohmann::json::object();
    table_ = nlohmann::json::json_pointer();
    while (true) {
      skip_blank();
      if (eof()) break;
      if (peek() == '[') {
        parse_table_header();
      } else {
        parse_assignment(table_);
        expect_line_end();
      }
    }
    return root_;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::parse_error,
                "TOML line " + std::to_string(line_) + ": " + msg);
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char take() {
    const char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  // Whitespace and comments within a line.
  void skip_inline_ws() {
    while (!eof()) {
      const char c = peek();
      if (c == ' ' || c == '\t') {
        take();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') take();
      } else {
        break;
      }
    }
  }

  // Whitespace, comments and newlines between statements.
  void skip_blank() {
    while (!eof()) {
      skip_inline_ws();
      if (!eof() && (peek() == '\n' || peek() == '\r')) {
        take();
      } else {
        break;
      }
    }
  }

  void expect_line_end() {
    skip_inline_ws();
    if (eof()) return;
    if (peek() == '\n' || peek() == '\r') {
      take();
      return;
    }
    fail("expected end of line");
  }

  static bool is_bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string parse_key_segment() {
    skip_inline_ws();
    if (eof()) fail("expected a key");
    if (peek() == '"' || peek() == '\'') return parse_string();
    std::string key;
    while (!eof() && is_bare_key_char(peek())) key.push_back(take());
    if (key.empty()) fail("expected a key");
    return key;
  }

  std::vector<std::string> parse_key_path() {
    std::vector<std::string> path{parse_key_segment()};
    while (true) {
      skip_inline_ws();
      if (!eof() && peek() == '.') {
        take();
        path.push_back(parse_key_segment());
      } else {
        break;
      }
    }
    return path;
  }

  // Walks a header path from the root, descending into the last entry of
  // any array-of-tables met along the way.
  nlohmann::json::json_pointer descend(const std::vector<std::string>& path,
                                       bool last_is_array) {
    nlohmann::json::json_pointer ptr;
    for (std::size_t i = 0; i < path.size(); ++i) {
      ptr /= path[i];
      const bool last = i + 1 == path.size();
      nlohmann::json& node = root_[ptr];
      if (node.is_null()) {
        node = (last && last_is_array) ? nlohmann::json::array()
                                       : nlohmann::json::object();
      }
      if (last && last_is_array) {
        if (!root_[ptr].is_array()) fail("redefinition of '" + path[i] + "'");
        continue;
      }
      if (root_[ptr].is_array()) {
        if (root_[ptr].empty()) fail("empty table array '" + path[i] + "'");
        ptr /= static_cast<int>(root_[ptr].size() - 1);
      } else if (!root_[ptr].is_object()) {
        fail("key '" + path[i] + "' is already a value");
      }
    }
    return ptr;
  }

  void parse_table_header() {
    take();  // '['
    const bool array_table = !eof() && peek() == '[';
    if (array_table) take();
    const std::vector<std::string> path = parse_key_path();
    skip_inline_ws();
    if (eof() || take() != ']') fail("expected ']'");
    if (array_table && (eof() || take() != ']')) fail("expected ']]'");
    nlohmann::json::json_pointer ptr = descend(path, array_table);
    if (array_table) {
      root_[ptr].push_back(nlohmann::json::object());
      ptr /= static_cast<int>(root_[ptr].size() - 1);
    } else if (!root_[ptr].is_object()) {
      fail("table redefines an existing value");
    }
    table_ = ptr;
    expect_line_end();
  }

  void parse_assignment(const nlohmann::json::json_pointer& table) {
    const std::vector<std::string> path = parse_key_path();
    skip_inline_ws();
    if (eof() || take() != '=') fail("expected '='");
    skip_inline_ws();
    nlohmann::json value = parse_value();

    nlohmann::json::json_pointer ptr = table;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      ptr /= path[i];
      nlohmann::json& node = root_[ptr];
      if (node.is_null()) node = nlohmann::json::object();
      if (!node.is_object()) fail("key '" + path[i] + "' is already a value");
    }
    ptr /= path.back();
    if (!root_[ptr].is_null()) fail("duplicate key '" + path.back() + "'");
    root_[ptr] = std::move(value);
  }

  nlohmann::json parse_value() {
    skip_inline_ws();
    if (eof()) fail("expected a value");
    const char c = peek();
    if (c == '"' || c == '\'') return parse_string();
    if (c == '[') return parse_array();
    if (c == '{') return parse_inline_table();
    return parse_scalar();
  }

  std::string parse_string() {
    const char quote = take();
    std::string out;
    while (true) {
      if (eof()) fail("unterminated string");
      char c = take();
      if (c == quote) break;
      if (c == '\n') fail("newline inside string");
      if (quote == '"' && c == '\\') {
        if (eof()) fail("unterminated escape");
        const char e = take();
        switch (e) {
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          case 'b': out.push_back('\b'); break;
          case 'f': out.push_back('\f'); break;
          case 'n': out.push_back('\n'); break;
          case 'r': out.push_back('\r'); break;
          case 't': out.push_back('\t'); break;
          case 'u': {
            unsigned code = 0;
            for (int k = 0; k < 4; ++k) {
              if (eof()) fail("unterminated unicode escape");
              const char h = take();
              code <<= 4;
              if (h >= '0' && h <= '9') code |= h - '0';
              else if (h >= 'a' && h <= 'f') code |= h - 'a' + 10;
              else if (h >= 'A' && h <= 'F') code |= h - 'A' + 10;
              else fail("bad unicode escape");
            }
            if (code < 0x80) {
              out.push_back(static_cast<char>(code));
            } else if (code < 0x800) {
              out.push_back(static_cast<char>(0xC0 | (code >> 6)));
              out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
            } else {
              out.push_back(static_cast<char>(0xE0 | (code >> 12)));
              out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
              out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
            }
            break;
          }
          default: fail("unsupported escape");
        }
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  nlohmann::json parse_array() {
    take();  // '['
    nlohmann::json arr = nlohmann::json::array();
    while (true) {
      skip_blank();
      if (eof()) fail("unterminated array");
      if (peek() == ']') {
        take();
        break;
      }
      arr.push_back(parse_value());
      skip_blank();
      if (eof()) fail("unterminated array");
      if (peek() == ',') {
        take();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
    return arr;
  }

  nlohmann::json parse_inline_table() {
    take();  // '{'
    nlohmann::json obj = nlohmann::json::object();
    skip_inline_ws();
    if (!eof() && peek() == '}') {
      take();
      return obj;
    }
    while (true) {
      skip_inline_ws();
      const std::string key = parse_key_segment();
      skip_inline_ws();
      if (eof() || take() != '=') fail("expected '=' in inline table");
      skip_inline_ws();
      if (obj.contains(key)) fail("duplicate key '" + key + "'");
      obj[key] = parse_value();
      skip_inline_ws();
      if (eof()) fail("unterminated inline table");
      if (peek() == ',') {
        take();
        continue;
      }
      if (peek() == '}') {
        take();
        break;
      }
      fail("expected ',' or '}' in inline table");
    }
    return obj;
  }

  nlohmann::json parse_scalar() {
    std::string token;
    while (!eof()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '+' ||
          c == '-' || c == '.' || c == '_') {
        token.push_back(take());
      } else {
        break;
      }
    }
    if (token.empty()) fail("expected a value");
    if (token == "true") return true;
    if (token == "false") return false;
    // JSON cannot carry IEEE infinities; the schema spells it "inf".
    if (token == "inf" || token == "+inf") return "inf";
    if (token == "-inf" || token == "nan" || token == "+nan" ||
        token == "-nan") {
      fail("non-finite value '" + token + "' is not supported here");
    }
    token.erase(std::remove(token.begin(), token.end(), '_'), token.end());
    const bool is_float = token.find_first_of(".eE") != std::string::npos;
    if (!is_float) {
      long long integer = 0;
      const auto [end, ec] = std::from_chars(
          token.data(), token.data() + token.size(), integer);
      if (ec == std::errc() && end == token.data() + token.size()) {
        return integer;
      }
    }
    try {
      std::size_t used = 0;
      const double value = std::stod(token, &used);
      if (used != token.size()) fail("bad number '" + token + "'");
      return value;
    } catch (const std::exception&) {
      fail("bad number '" + token + "'");
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  nlohmann::json root_;
  nlohmann::json::json_pointer table_;
};

}  // namespace

nlohmann::json toml_to_json(const std::string& text) {
  return TomlParser(text).parse();
}

// ----- schema validation ----------------------------------------------------

const std::vector<std::string>& known_check_names() {
  static const std::vector<std::string> names = {
      "character_symmetry",
      "interpolation",
      "measure_isomorphism",
      "property_double_star",
      "property_star",
      "property_star_failure_search",
      "regular_isomorphism",
      "trajectory_norm",
  };
  return names;
}

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(Errc::validation_error, field + ": " + why);
}

const nlohmann::json& require_field(const nlohmann::json& j,
                                    const std::string& key,
                                    const std::string& display) {
  if (!j.contains(key)) invalid(display, "missing required field");
  return j.at(key);
}

const nlohmann::json& require_field(const nlohmann::json& j,
                                    const std::string& key) {
  return require_field(j, key, key);
}

cplx complex_from_json(const nlohmann::json& j, const std::string& field) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return cplx(j[0].get<double>(), j[1].get<double>());
  }
  invalid(field, "expected a number or an [re, im] pair");
}

Eigen::MatrixXcd block_from_json(const nlohmann::json& j, int dim,
                                 const std::string& field) {
  if (dim == 1) {
    // Scalar shorthands: a plain number, an [re, im] pair, or the full
    // 1 x 1 nested form.
    if (j.is_number()) return Eigen::MatrixXcd::Constant(1, 1, j.get<double>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() &&
        j[1].is_number()) {
      return Eigen::MatrixXcd::Constant(1, 1, complex_from_json(j, field));
    }
  }
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    invalid(field, "expected a " + std::to_string(dim) + "x" +
                       std::to_string(dim) + " matrix");
  }
  Eigen::MatrixXcd block(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const nlohmann::json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      invalid(field, "row " + std::to_string(r) + " must have " +
                         std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      block(r, c) = complex_from_json(
          row[c], field + "[" + std::to_string(r) + "][" +
                      std::to_string(c) + "]");
    }
  }
  return block;
}

}  // namespace

double exponent_from_json(const nlohmann::json& j, const std::string& field) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    invalid(field, "the only accepted string is \"inf\"");
  }
  if (!j.is_number()) invalid(field, "expected a number or \"inf\"");
  const double p = j.get<double>();
  if (!(p >= 1.0) || std::isnan(p)) invalid(field, "exponent must be >= 1");
  return p;
}

Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) invalid("scenario", "expected a table");

  const nlohmann::json& jid = require_field(j, "id");
  if (!jid.is_string()) invalid("id", "expected a string");
  const std::string id = jid.get<std::string>();

  int dim = 1;
  if (j.contains("dim")) {
    if (!j.at("dim").is_number_integer()) invalid("dim", "expected an integer");
    dim = j.at("dim").get<int>();
    if (dim < 1) invalid("dim", "dimension must be >= 1");
  }

  std::uint64_t seed = 0;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) {
      invalid("seed", "expected an integer");
    }
    seed = j.at("seed").get<std::uint64_t>();
  }

  // space.atoms : [[label, weight], ...]
  const nlohmann::json& jspace = require_field(j, "space");
  const nlohmann::json& jatoms = require_field(jspace, "atoms");
  if (!jatoms.is_array() || jatoms.empty()) {
    invalid("space.atoms", "expected a non-empty array");
  }
  std::vector<std::pair<std::string, double>> atoms;
  for (std::size_t i = 0; i < jatoms.size(); ++i) {
    const nlohmann::json& pair = jatoms[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
        !pair[1].is_number()) {
      invalid("space.atoms[" + std::to_string(i) + "]",
              "expected a [label, weight] pair");
    }
    atoms.emplace_back(pair[0].get<std::string>(), pair[1].get<double>());
  }
  SpacePtr space;
  try {
    space = build_space(atoms);
  } catch (const Error& e) {
    invalid("space.atoms", e.what());
  }

  std::optional<std::vector<double>> space2_weights;
  if (j.contains("space2")) {
    const nlohmann::json& jw = require_field(j.at("space2"), "weights", "space2.weights");
    if (!jw.is_array() ||
        jw.size() != static_cast<std::size_t>(space->atom_count())) {
      invalid("space2.weights", "expected one weight per atom");
    }
    std::vector<double> weights;
    for (std::size_t i = 0; i < jw.size(); ++i) {
      if (!jw[i].is_number() || !(jw[i].get<double>() > 0.0)) {
        invalid("space2.weights[" + std::to_string(i) + "]",
                "weights must be positive numbers");
      }
      weights.push_back(jw[i].get<double>());
    }
    space2_weights = std::move(weights);
  }

  const nlohmann::json& jgroup = require_field(j, "group");
  const nlohmann::json& jcayley = require_field(jgroup, "cayley");
  if (!jcayley.is_array()) invalid("group.cayley", "expected an array");
  std::vector<std::vector<int>> cayley;
  for (const nlohmann::json& row : jcayley) {
    if (!row.is_array()) invalid("group.cayley", "expected rows of integers");
    std::vector<int> r;
    for (const nlohmann::json& v : row) {
      if (!v.is_number_integer()) {
        invalid("group.cayley", "entries must be integers");
      }
      r.push_back(v.get<int>());
    }
    cayley.push_back(std::move(r));
  }
  GroupPtr group;
  try {
    group = std::make_shared<const FiniteGroup>(std::move(cayley));
  } catch (const Error& e) {
    invalid("group.cayley", e.what());
  }

  const nlohmann::json& jaction = require_field(j, "action");
  const nlohmann::json& jperms = require_field(jaction, "perms", "action.perms");
  if (!jperms.is_array()) invalid("action.perms", "expected an array");
  std::vector<std::vector<int>> perms;
  for (const nlohmann::json& row : jperms) {
    if (!row.is_array()) invalid("action.perms", "expected rows of integers");
    std::vector<int> r;
    for (const nlohmann::json& v : row) {
      if (!v.is_number_integer()) {
        invalid("action.perms", "entries must be integers");
      }
      r.push_back(v.get<int>());
    }
    perms.push_back(std::move(r));
  }
  ActionPtr action;
  try {
    action = build_action(group, space, perms);
  } catch (const Error& e) {
    invalid("action.perms", e.what());
  }

  const nlohmann::json& jelement = require_field(j, "element");
  const nlohmann::json& jterms = require_field(jelement, "terms", "element.terms");
  if (!jterms.is_array()) invalid("element.terms", "expected an array");
  std::vector<std::pair<int, Coefficient>> terms;
  for (std::size_t t = 0; t < jterms.size(); ++t) {
    const std::string field = "element.terms[" + std::to_string(t) + "]";
    const nlohmann::json& jterm = jterms[t];
    if (!jterm.is_object()) invalid(field, "expected a table");
    if (!jterm.contains("g") || !jterm.at("g").is_number_integer()) {
      invalid(field + ".g", "expected a group element index");
    }
    const int g = jterm.at("g").get<int>();
    if (!jterm.contains("blocks") || !jterm.at("blocks").is_array() ||
        jterm.at("blocks").size() !=
            static_cast<std::size_t>(space->atom_count())) {
      invalid(field + ".blocks", "expected one block per atom");
    }
    std::vector<Eigen::MatrixXcd> blocks;
    for (int x = 0; x < space->atom_count(); ++x) {
      blocks.push_back(block_from_json(
          jterm.at("blocks")[x],
          dim, field + ".blocks[" + std::to_string(x) + "]"));
    }
    try {
      terms.emplace_back(g, Coefficient(space, dim, std::move(blocks)));
    } catch (const Error& e) {
      invalid(field, e.what());
    }
  }
  std::optional<SymbolicElement> element;
  try {
    element = SymbolicElement::make(action, dim, terms);
  } catch (const Error& e) {
    invalid("element.terms", e.what());
  }

  const nlohmann::json& jexp = require_field(j, "exponents");
  if (!jexp.is_array() || jexp.empty()) {
    invalid("exponents", "expected a non-empty array");
  }
  std::vector<double> exponents;
  for (std::size_t i = 0; i < jexp.size(); ++i) {
    exponents.push_back(exponent_from_json(
        jexp[i], "exponents[" + std::to_string(i) + "]"));
  }

  const nlohmann::json& jchecks = require_field(j, "checks");
  if (!jchecks.is_array()) invalid("checks", "expected an array");
  std::vector<std::string> checks;
  for (const nlohmann::json& c : jchecks) {
    if (!c.is_string()) invalid("checks", "expected strings");
    const std::string name = c.get<std::string>();
    const auto& known = known_check_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw Error(Errc::unknown_check, "checks: unknown check '" + name + "'");
    }
    checks.push_back(name);
  }

  Tolerances tolerances;
  if (j.contains("tolerances")) {
    const nlohmann::json& jt = j.at("tolerances");
    if (!jt.is_object()) invalid("tolerances", "expected a table");
    const auto read = [&](const char* key, double& out) {
      if (!jt.contains(key)) return;
      if (!jt.at(key).is_number() || !(jt.at(key).get<double>() > 0.0)) {
        invalid(std::string("tolerances.") + key, "expected a positive number");
      }
      out = jt.at(key).get<double>();
    };
    read("exact", tolerances.exact);
    read("svd", tolerances.svd);
    read("power", tolerances.power);
  }

  return Scenario{id,     space,   space2_weights, group,
                  action, dim,     *element,       exponents,
                  checks, seed,    tolerances};
}

nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  j["id"] = s.id;
  j["dim"] = s.dim;
  j["seed"] = s.seed;

  nlohmann::json atoms = nlohmann::json::array();
  for (int x = 0; x < s.space->atom_count(); ++x) {
    atoms.push_back({s.space->label(x), s.space->weight(x)});
  }
  j["space"] = {{"atoms", atoms}};
  if (s.space2_weights) j["space2"] = {{"weights", *s.space2_weights}};

  j["group"] = {{"cayley", s.group->cayley()}};
  j["action"] = {{"perms", s.action->perms()}};

  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [g, coeff] : s.element.terms()) {
    nlohmann::json blocks = nlohmann::json::array();
    for (int x = 0; x < s.space->atom_count(); ++x) {
      const Eigen::MatrixXcd& block = coeff.block(x);
      if (s.dim == 1) {
        blocks.push_back({block(0, 0).real(), block(0, 0).imag()});
      } else {
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < s.dim; ++r) {
          nlohmann::json row = nlohmann::json::array();
          for (int c = 0; c < s.dim; ++c) {
            row.push_back({block(r, c).real(), block(r, c).imag()});
          }
          rows.push_back(row);
        }
        blocks.push_back(rows);
      }
    }
    terms.push_back({{"g", g}, {"blocks", blocks}});
  }
  j["element"] = {{"terms", terms}};

  nlohmann::json exps = nlohmann::json::array();
  for (double p : s.exponents) exps.push_back(exponent_to_json(p));
  j["exponents"] = exps;
  j["checks"] = s.checks;
  j["tolerances"] = {{"exact", s.tolerances.exact},
                     {"svd", s.tolerances.svd},
                     {"power", s.tolerances.power}};
  return j;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::parse_error, "cannot open '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  nlohmann::json doc;
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml") {
    doc = toml_to_json(text);
  } else {
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::parse_error, std::string("JSON: ") + e.what());
    }
  }
  return scenario_from_json(doc);
}

// ----- runner ---------------------------------------------------------------

void to_json(nlohmann::json& j, const SuiteReport& r) {
  j = nlohmann::json{{"scenario_id", r.scenario_id},
                     {"reports", r.reports},
                     {"summary",
                      {{"total", r.total},
                       {"passed", r.passed},
                       {"failed", r.failed},
                       {"refused", r.refused}}}};
}

SuiteReport run_scenario(const Scenario& scenario) {
  SuiteReport suite;
  suite.scenario_id = scenario.id;

  // Canonical execution order: check name ascending, then exponent
  // ascending with inf last.
  std::vector<std::string> names = scenario.checks;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::vector<double> exponents = scenario.exponents;
  std::sort(exponents.begin(), exponents.end());
  exponents.erase(std::unique(exponents.begin(), exponents.end()),
                  exponents.end());

  for (const std::string& name : names) {
    for (double p : exponents) {
      ++suite.total;
      try {
        CheckReport report;
        if (name == "property_star") {
          report = check_property_star(scenario.element, p,
                                       scenario.tolerances);
        } else if (name == "property_star_failure_search") {
          report = check_property_star_failure_search(
              scenario.action, p, 200, scenario.seed, scenario.dim,
              scenario.tolerances);
        } else if (name == "property_double_star") {
          report = check_property_double_star(scenario.element, p,
                                              scenario.tolerances);
        } else if (name == "character_symmetry") {
          report = check_character_symmetry(scenario.element, p,
                                            scenario.tolerances);
        } else if (name == "regular_isomorphism") {
          report = check_regular_isomorphism(scenario.element, p,
                                             scenario.tolerances);
        } else if (name == "trajectory_norm") {
          report = check_trajectory_norm(scenario.element, p,
                                         scenario.tolerances);
        } else if (name == "interpolation") {
          report = check_interpolation(scenario.element, p,
                                       scenario.tolerances);
        } else if (name == "measure_isomorphism") {
          if (!scenario.space2_weights) {
            throw Error(Errc::atom_mismatch,
                        "scenario carries no second weight vector");
          }
          std::vector<std::pair<std::string, double>> atoms;
          for (int x = 0; x < scenario.space->atom_count(); ++x) {
            atoms.emplace_back(scenario.space->label(x),
                               (*scenario.space2_weights)[x]);
          }
          report = check_measure_isomorphism(scenario.element,
                                             build_space(atoms), p,
                                             scenario.tolerances);
        } else {
          throw Error(Errc::unknown_check, "unknown check '" + name + "'");
        }
        report.scenario_id = scenario.id;
        nlohmann::json entry = report;
        entry["status"] = report.passed ? "passed" : "failed";
        suite.reports.push_back(std::move(entry));
        if (report.passed) {
          ++suite.passed;
        } else {
          ++suite.failed;
        }
      } catch (const Error& e) {
        suite.reports.push_back({{"check", name},
                                 {"p", exponent_to_json(p)},
                                 {"status", "refused"},
                                 {"reason", e.what()},
                                 {"code", errc_name(e.code())},
                                 {"scenario_id", scenario.id}});
        ++suite.refused;
      }
    }
  }
  return suite;
}

}  // namespace wco
