#include "zslab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <set>
#include <sstream>

#include "zslab/errors.hpp"

namespace zslab {

namespace {

bool parse_double(const std::string& s, double* out) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) return false;
    *out = v;
    return true;
  } catch (...) {
    return false;
  }
}

}  // namespace

std::int64_t ConfigValue::as_int() const {
  if (is_list) throw ConfigError("expected an integer, found a list", line);
  try {
    std::size_t pos = 0;
    std::int64_t v = std::stoll(token, &pos);
    if (pos != token.size()) throw ConfigError("not an integer: " + token, line);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError("not an integer: " + token, line);
  }
}

double ConfigValue::as_double() const {
  if (is_list) throw ConfigError("expected a number, found a list", line);
  double v = 0;
  if (!parse_double(token, &v)) {
    throw ConfigError("not a number: " + token, line);
  }
  return v;
}

Complex ConfigValue::as_complex() const {
  if (is_list) throw ConfigError("expected a complex number, found a list", line);
  std::string s = token;
  if (s.empty()) throw ConfigError("empty complex literal", line);
  // Forms: "a", "bi", "a+bi", "a-bi" with a, b real literals.
  if (s.back() == 'i' || s.back() == 'I') {
    std::string body = s.substr(0, s.size() - 1);
    // Split at the last +/- that is not an exponent sign or leading sign.
    for (std::size_t k = body.size(); k-- > 1;) {
      char c = body[k];
      if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        double re = 0, im = 0;
        std::string im_part = body.substr(k);
        if (im_part == "+") im_part = "1";
        if (im_part == "-") im_part = "-1";
        if (parse_double(body.substr(0, k), &re) &&
            parse_double(im_part, &im)) {
          return {re, im};
        }
        break;
      }
    }
    double im = 0;
    std::string body2 = body.empty() ? "1" : (body == "-" ? "-1" : body);
    if (parse_double(body2, &im)) return {0.0, im};
    throw ConfigError("not a complex literal: " + token, line);
  }
  double re = 0;
  if (!parse_double(s, &re)) {
    throw ConfigError("not a complex literal: " + token, line);
  }
  return {re, 0.0};
}

const std::string& ConfigValue::as_name() const {
  if (is_list) throw ConfigError("expected a name, found a list", line);
  return token;
}

const std::vector<ConfigValue>& ConfigValue::as_list() const {
  if (!is_list) throw ConfigError("expected a list, found " + token, line);
  return items;
}

CMat ConfigValue::as_matrix() const {
  const auto& rows = as_list();
  if (rows.empty()) throw ConfigError("empty matrix", line);
  const std::size_t cols = rows[0].as_list().size();
  CMat out(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i].as_list();
    if (row.size() != cols) {
      throw ConfigError("ragged matrix rows", rows[i].line);
    }
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          row[j].as_complex();
    }
  }
  return out;
}

const ConfigValue& ConfigSection::at(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) {
    throw ConfigError("section [" + type + " " + name + "] is missing key '" +
                          key + "'",
                      line);
  }
  return it->second;
}

const ConfigSection* RunConfig::find_by_name(const std::string& name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const ConfigSection* RunConfig::find_unique(const std::string& type) const {
  const ConfigSection* found = nullptr;
  for (const auto& s : sections) {
    if (s.type != type) continue;
    if (found) {
      throw ConfigError("multiple [" + type + "] sections", s.line);
    }
    found = &s;
  }
  return found;
}

const ConfigSection& RunConfig::resolve(const std::string& name,
                                        int from_line) const {
  const ConfigSection* s = find_by_name(name);
  if (!s) {
    throw ConfigError("reference to undefined section '" + name + "'",
                      from_line);
  }
  return *s;
}

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line;
};

void skip_ws(Cursor& c) {
  while (c.pos < c.text.size() &&
         (c.text[c.pos] == ' ' || c.text[c.pos] == '\t')) {
    ++c.pos;
  }
}

ConfigValue parse_value(Cursor& c);

ConfigValue parse_list(Cursor& c) {
  ConfigValue v;
  v.is_list = true;
  v.line = c.line;
  ++c.pos;  // '['
  skip_ws(c);
  if (c.pos < c.text.size() && c.text[c.pos] == ']') {
    ++c.pos;
    return v;
  }
  while (true) {
    v.items.push_back(parse_value(c));
    skip_ws(c);
    if (c.pos >= c.text.size()) {
      throw ConfigError("unterminated list", c.line);
    }
    if (c.text[c.pos] == ',') {
      ++c.pos;
      skip_ws(c);
      continue;
    }
    if (c.text[c.pos] == ']') {
      ++c.pos;
      return v;
    }
    throw ConfigError("expected ',' or ']' in list", c.line);
  }
}

ConfigValue parse_value(Cursor& c) {
  skip_ws(c);
  if (c.pos >= c.text.size()) throw ConfigError("missing value", c.line);
  if (c.text[c.pos] == '[') return parse_list(c);
  ConfigValue v;
  v.line = c.line;
  if (c.text[c.pos] == '"') {
    ++c.pos;
    while (c.pos < c.text.size() && c.text[c.pos] != '"') {
      v.token += c.text[c.pos++];
    }
    if (c.pos >= c.text.size()) throw ConfigError("unterminated string", c.line);
    ++c.pos;
    return v;
  }
  while (c.pos < c.text.size()) {
    char ch = c.text[c.pos];
    if (ch == ',' || ch == ']' || ch == ' ' || ch == '\t' || ch == '#') break;
    v.token += ch;
    ++c.pos;
  }
  if (v.token.empty()) throw ConfigError("missing value", c.line);
  return v;
}

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"semigroup", {"kind", "rank", "alphabet", "elements", "products", "identity"}},
      {"group", {"kind", "rank", "order", "elements", "products", "identity"}},
      {"zs",
       {"semigroup", "group", "builtin", "rules", "tamper_restriction",
        "tamper_action"}},
      {"kgraph", {"rank", "vertices", "edges", "squares"}},
      {"selfsimilar", {"graph", "group", "vertex_action", "edge_action"}},
      {"algebra", {"kind", "dim"}},
      {"system",
       {"builtin", "zs", "graph", "action", "convention", "algebra",
        "fiber_dim", "inner", "left", "right", "mult", "e_basis"}},
      {"action", {"builtin", "beta", "tamper_scale"}},
      {"windows", {"radius_p", "radius_g", "fock_ball"}},
      {"run", {"suites", "tolerance", "max_dim"}},
  };
  return keys;
}

const std::map<std::string, std::vector<std::string>>& reference_keys() {
  // section type -> keys whose value names another section
  static const std::map<std::string, std::vector<std::string>> refs = {
      {"zs", {"semigroup", "group"}},
      {"selfsimilar", {"graph", "group"}},
      {"system", {"zs", "graph", "action", "algebra"}},
  };
  return refs;
}

}  // namespace

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names = {
      "zs-axioms", "action-axioms", "bowtie",     "bowtie-tilde", "toeplitz",
      "covariance", "round-trip",   "cp",         "nica"};
  return names;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.raw_text = text;

  std::istringstream in(text);
  std::string raw_line;
  int line_no = 0;
  ConfigSection* current = nullptr;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string line = raw_line;
    // Strip comments, keeping '#' inside quoted strings.
    std::size_t hash = std::string::npos;
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') {
        in_quote = !in_quote;
      } else if (line[i] == '#' && !in_quote) {
        hash = i;
        break;
      }
    }
    if (hash != std::string::npos) line = line.substr(0, hash);
    // trim
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("malformed section header", line_no);
      }
      std::istringstream hdr(line.substr(1, line.size() - 2));
      ConfigSection s;
      s.line = line_no;
      hdr >> s.type >> s.name;
      if (s.type.empty()) throw ConfigError("empty section header", line_no);
      if (!allowed_keys().count(s.type)) {
        throw ConfigError("unknown section type '" + s.type + "'", line_no);
      }
      if (s.name.empty() && s.type != "windows" && s.type != "run") {
        throw ConfigError("section [" + s.type + "] needs a name", line_no);
      }
      if (!s.name.empty() && cfg.find_by_name(s.name)) {
        throw ConfigError("duplicate section name '" + s.name + "'", line_no);
      }
      cfg.sections.push_back(std::move(s));
      current = &cfg.sections.back();
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value'", line_no);
    }
    if (!current) {
      throw ConfigError("entry outside of any section", line_no);
    }
    std::string key = line.substr(0, eq);
    auto kend = key.find_last_not_of(" \t");
    key = key.substr(0, kend + 1);
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (!allowed_keys().at(current->type).count(key)) {
      throw ConfigError("unknown key '" + key + "' in section [" +
                            current->type + " " + current->name + "]",
                        line_no);
    }
    if (current->entries.count(key)) {
      throw ConfigError("duplicate key '" + key + "'", line_no);
    }
    std::string rest = line.substr(eq + 1);
    Cursor c{rest, 0, line_no};
    ConfigValue v = parse_value(c);
    skip_ws(c);
    if (c.pos < rest.size()) {
      throw ConfigError("trailing characters after value", line_no);
    }
    current->entries.emplace(std::move(key), std::move(v));
  }

  // Resolve references.
  for (const auto& s : cfg.sections) {
    auto it = reference_keys().find(s.type);
    if (it == reference_keys().end()) continue;
    for (const std::string& key : it->second) {
      if (!s.has(key)) continue;
      cfg.resolve(s.at(key).as_name(), s.at(key).line);
    }
  }

  // Windows and run parameters.
  if (const ConfigSection* w = cfg.find_unique("windows")) {
    if (w->has("radius_p")) cfg.radius_p = static_cast<int>(w->at("radius_p").as_int());
    if (w->has("radius_g")) cfg.radius_g = static_cast<int>(w->at("radius_g").as_int());
    if (w->has("fock_ball")) cfg.fock_ball = static_cast<int>(w->at("fock_ball").as_int());
    if (cfg.radius_p <= 0 || cfg.radius_g <= 0 || cfg.fock_ball <= 0) {
      throw ConfigError("window radii must be positive", w->line);
    }
    if (cfg.fock_ball > cfg.radius_p) {
      throw ConfigError("fock_ball cannot exceed radius_p", w->line);
    }
  }
  if (const ConfigSection* r = cfg.find_unique("run")) {
    if (r->has("tolerance")) {
      cfg.tolerance = r->at("tolerance").as_double();
      if (cfg.tolerance <= 0) {
        throw ConfigError("tolerance must be positive", r->line);
      }
    }
    if (r->has("max_dim")) {
      cfg.max_dim = static_cast<int>(r->at("max_dim").as_int());
      if (cfg.max_dim <= 0) throw ConfigError("max_dim must be positive", r->line);
    }
    if (r->has("suites")) {
      const ConfigValue& v = r->at("suites");
      std::vector<std::string> names;
      if (v.is_list) {
        for (const auto& item : v.as_list()) names.push_back(item.as_name());
      } else {
        names.push_back(v.as_name());
      }
      for (const std::string& n : names) {
        if (n == "all") {
          cfg.suites = all_suites();
          continue;
        }
        if (std::find(all_suites().begin(), all_suites().end(), n) ==
            all_suites().end()) {
          throw ConfigError("unknown suite '" + n + "'", v.line);
        }
        cfg.suites.push_back(n);
      }
    }
  }
  if (cfg.suites.empty()) cfg.suites = all_suites();
  return cfg;
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace zslab
