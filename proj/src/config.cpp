#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tracelab/errors.hpp"
#include "tracelab/experiment.hpp"

namespace tracelab {

namespace {

struct TomlValue;
using TomlArray = std::vector<TomlValue>;
struct TomlValue {
  std::variant<double, bool, std::string, TomlArray> data;
  std::size_t line = 0;
};

class TomlReader {
 public:
  explicit TomlReader(const std::string& text) : text_(text) {}

  std::map<std::string, TomlValue> parse() {
    std::map<std::string, TomlValue> out;
    while (true) {
      skip_blank_lines();
      if (at_end()) break;
      if (peek() == '[') {
        // Table headers only group keys; the experiment schema is flat.
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      const std::size_t key_line = line_;
      std::string key = read_key();
      skip_spaces();
      expect('=');
      skip_spaces();
      TomlValue value = read_value();
      value.line = key_line;
      skip_spaces();
      if (!at_end() && peek() == '#') skip_comment();
      if (!at_end() && peek() != '\n') fail("trailing characters after value");
      if (out.count(key)) fail("duplicate key '" + key + "'");
      out.emplace(std::move(key), std::move(value));
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("config: " + what, line_, column_);
  }
  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }
  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }
  void skip_comment() {
    while (!at_end() && peek() != '\n') advance();
  }
  void skip_blank_lines() {
    while (!at_end()) {
      skip_spaces();
      if (at_end()) return;
      if (peek() == '#') skip_comment();
      if (!at_end() && peek() == '\n') {
        advance();
        continue;
      }
      return;
    }
  }
  // Inside arrays newlines and comments are whitespace.
  void skip_array_space() {
    while (!at_end()) {
      skip_spaces();
      if (!at_end() && peek() == '#') skip_comment();
      if (!at_end() && peek() == '\n') {
        advance();
        continue;
      }
      return;
    }
  }

  std::string read_key() {
    std::string key;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                         peek() == '-')) {
      key += peek();
      advance();
    }
    if (key.empty()) fail("expected a key");
    return key;
  }

  TomlValue read_value() {
    if (at_end()) fail("missing value");
    const char c = peek();
    if (c == '"') return {read_string()};
    if (c == '[') {
      advance();
      TomlArray items;
      skip_array_space();
      while (!at_end() && peek() != ']') {
        items.push_back(read_value());
        skip_array_space();
        if (!at_end() && peek() == ',') {
          advance();
          skip_array_space();
        } else {
          break;
        }
      }
      expect(']');
      return {std::move(items)};
    }
    std::string word;
    while (!at_end() && std::string_view(" \t\r\n,]#").find(peek()) == std::string_view::npos) {
      word += peek();
      advance();
    }
    if (word == "true") return {true};
    if (word == "false") return {false};
    std::string digits;
    for (char ch : word) {
      if (ch != '_') digits += ch;
    }
    try {
      std::size_t used = 0;
      const double value = std::stod(digits, &used);
      if (used != digits.size()) fail("bad number '" + word + "'");
      return {value};
    } catch (const std::logic_error&) {
      fail("bad value '" + word + "'");
    }
  }

  std::string read_string() {
    expect('"');
    std::string s;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      char c = peek();
      advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("unterminated escape");
        const char e = peek();
        advance();
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      }
      s += c;
    }
    return s;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

[[noreturn]] void bad_type(const std::string& key, const TomlValue& v, const char* want) {
  throw ParseError("config: key '" + key + "' must be " + want, v.line, 1);
}

double as_number(const std::string& key, const TomlValue& v) {
  if (const auto* d = std::get_if<double>(&v.data)) return *d;
  bad_type(key, v, "a number");
}

std::uint64_t as_count(const std::string& key, const TomlValue& v) {
  const double d = as_number(key, v);
  if (d < 0 || std::floor(d) != d || d > 1.8e19) bad_type(key, v, "a non-negative integer");
  return static_cast<std::uint64_t>(d);
}

std::string as_string(const std::string& key, const TomlValue& v) {
  if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
  bad_type(key, v, "a string");
}

bool as_bool(const std::string& key, const TomlValue& v) {
  if (const auto* b = std::get_if<bool>(&v.data)) return *b;
  bad_type(key, v, "a boolean");
}

std::vector<std::size_t> as_count_list(const std::string& key, const TomlValue& v) {
  std::vector<std::size_t> out;
  if (const auto* arr = std::get_if<TomlArray>(&v.data)) {
    for (const auto& item : *arr) out.push_back(static_cast<std::size_t>(as_count(key, item)));
  } else {
    out.push_back(static_cast<std::size_t>(as_count(key, v)));
  }
  return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& toml_text) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : TomlReader(toml_text).parse()) {
    if (key == "base") {
      try {
        cfg.base = parse_base_model(as_string(key, value));
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("config: ") + e.what(), value.line, 1);
      }
    } else if (key == "n" || key == "n_list") {
      cfg.n_list = as_count_list(key, value);
    } else if (key == "t" || key == "t_list") {
      cfg.t_list = as_count_list(key, value);
    } else if (key == "p") {
      cfg.p = as_number(key, value);
    } else if (key == "m") {
      cfg.m = as_count(key, value);
    } else if (key == "pattern") {
      cfg.pattern = as_string(key, value);
    } else if (key == "trials") {
      cfg.trials = static_cast<std::size_t>(as_count(key, value));
    } else if (key == "master_seed" || key == "seed") {
      cfg.master_seed = as_count(key, value);
    } else if (key == "buffer_c") {
      cfg.buffer_c = as_number(key, value);
    } else if (key == "workers" || key == "parallelism") {
      cfg.workers = static_cast<unsigned>(as_count(key, value));
    } else if (key == "mode") {
      const std::string mode = as_string(key, value);
      if (mode != "annealed" && mode != "quenched") {
        throw ParseError("config: mode must be annealed or quenched", value.line, 1);
      }
      cfg.quenched = mode == "quenched";
    } else if (key == "fixed_graph") {
      cfg.quenched = as_bool(key, value);
    } else if (key == "rel_tol") {
      cfg.rel_tol = as_number(key, value);
    } else {
      throw ParseError("config: unknown key '" + key + "'", value.line, 1);
    }
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_config(text.str());
}

}  // namespace tracelab
