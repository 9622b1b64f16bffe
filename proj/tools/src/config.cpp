#include "fockdim_cli/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fockdim/error.hpp"

namespace fockdim::cli {

namespace {

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class TomlReader {
 public:
  explicit TomlReader(std::string_view text) : text_(text) {}

  TomlTable run() {
    TomlTable out;
    std::string table;
    while (pos_ < text_.size()) {
      skip_blank();
      if (at_line_end()) {
        consume_line_end();
        continue;
      }
      if (peek() == '[') {
        ++pos_;
        skip_blank();
        table = key();
        skip_blank();
        expect(']');
      } else {
        const std::string k = key();
        skip_blank();
        expect('=');
        skip_blank();
        const std::string full = table.empty() ? k : table + "." + k;
        if (out.contains(full)) fail("duplicate key '" + full + "'");
        out.emplace(full, value());
      }
      skip_blank();
      if (!at_line_end()) fail("unexpected character after value");
      consume_line_end();
    }
    return out;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool at_line_end() const {
    return pos_ >= text_.size() || text_[pos_] == '\n' || text_[pos_] == '#' ||
           (text_[pos_] == '\r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n');
  }

  void consume_line_end() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    if (pos_ < text_.size()) {
      ++pos_;
      ++line_;
      line_start_ = pos_;
    }
  }

  void skip_blank() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError({pos_, line_, pos_ - line_start_ + 1}, msg);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string key() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (is_bare_key_char(text_[pos_]) || text_[pos_] == '.')) ++pos_;
    if (pos_ == start) fail("expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  TomlValue value() {
    const char c = peek();
    if (c == '"') return string_value();
    if (c == '[' || c == '{') fail("arrays and inline tables are not supported");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '#')
      ++pos_;
    std::string word(text_.substr(start, pos_ - start));
    if (word.empty()) fail("expected a value");
    if (word == "true") return true;
    if (word == "false") return false;
    std::string digits;
    for (char ch : word)
      if (ch != '_') digits.push_back(ch);
    const bool is_float = digits.find_first_of(".eE") != std::string::npos ||
                          digits == "inf" || digits == "+inf" || digits == "-inf";
    const char* first = digits.data();
    const char* last = digits.data() + digits.size();
    if (*first == '+') ++first;
    if (is_float) {
      double d = 0.0;
      auto [ptr, ec] = std::from_chars(first, last, d);
      if (ec != std::errc() || ptr != last) {
        pos_ = start;
        fail("invalid number '" + word + "'");
      }
      return d;
    }
    long long v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      pos_ = start;
      fail("invalid value '" + word + "'");
    }
    return v;
  }

  TomlValue string_value() {
    ++pos_;
    std::string s;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') fail("unterminated string");
      const char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        const char e = peek();
        ++pos_;
        switch (e) {
          case 'n': s.push_back('\n'); break;
          case 't': s.push_back('\t'); break;
          case '"': s.push_back('"'); break;
          case '\\': s.push_back('\\'); break;
          default: --pos_; fail("unsupported escape");
        }
      } else {
        s.push_back(c);
      }
    }
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

double as_double(const std::string& key, const TomlValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<long long>(&v)) return static_cast<double>(*i);
  throw InvalidArgument("config key '" + key + "' must be a number");
}

long long as_int(const std::string& key, const TomlValue& v) {
  if (const auto* i = std::get_if<long long>(&v)) return *i;
  throw InvalidArgument("config key '" + key + "' must be an integer");
}

bool as_bool(const std::string& key, const TomlValue& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  throw InvalidArgument("config key '" + key + "' must be true or false");
}

double positive(const std::string& key, double x) {
  if (!(x > 0)) throw InvalidArgument("config key '" + key + "' must be positive");
  return x;
}

}  // namespace

TomlTable parse_toml(std::string_view text) { return TomlReader(text).run(); }

void apply_toml(const TomlTable& table, RunConfig& cfg) {
  for (const auto& [key, v] : table) {
    QuadConfig& q = cfg.quad;
    McConfig& mc = cfg.mc;
    CriteriaConfig& c = cfg.criteria;
    if (key == "quadrature.n_theta") q.n_theta = static_cast<int>(as_int(key, v));
    else if (key == "quadrature.rel_tol") q.rel_tol = positive(key, as_double(key, v));
    else if (key == "quadrature.m_min") q.m_min = static_cast<int>(as_int(key, v));
    else if (key == "quadrature.m_max") q.m_max = static_cast<int>(as_int(key, v));
    else if (key == "quadrature.infinity_cutoff") q.infinity_cutoff = positive(key, as_double(key, v));
    else if (key == "quadrature.atom_excision") q.atom_excision = positive(key, as_double(key, v));
    else if (key == "quadrature.margin") q.margin = positive(key, as_double(key, v));
    else if (key == "quadrature.exact") q.exact = as_bool(key, v);
    else if (key == "quadrature.n_sphere") q.n_sphere = static_cast<int>(as_int(key, v));
    else if (key == "mc.seed") mc.seed = static_cast<std::uint64_t>(as_int(key, v));
    else if (key == "mc.samples") mc.samples = static_cast<std::size_t>(positive(key, as_double(key, v)));
    else if (key == "mc.boundary_samples") mc.boundary_samples = static_cast<int>(as_int(key, v));
    else if (key == "criteria.n_dirs") c.n_dirs = static_cast<int>(as_int(key, v));
    else if (key == "criteria.growth_threshold") c.growth_threshold = positive(key, as_double(key, v));
    else if (key == "criteria.slope_threshold") c.slope_threshold = positive(key, as_double(key, v));
    else if (key == "criteria.psd_rel_tol") c.psd_rel_tol = positive(key, as_double(key, v));
    else if (key == "criteria.r_max_octaves") c.r_max_octaves = static_cast<int>(as_int(key, v));
    else if (key == "criteria.max_log2_R") c.max_log2_R = positive(key, as_double(key, v));
    else throw InvalidArgument("unknown config key '" + key + "'");
  }
  if (cfg.quad.m_max < cfg.quad.m_min) throw InvalidArgument("quadrature.m_max must be >= m_min");
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    apply_toml(parse_toml(ss.str()), cfg);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.pos(), path + ": " + e.detail());
  }
}

}  // namespace fockdim::cli
