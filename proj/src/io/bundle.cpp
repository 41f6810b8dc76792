#include "infsup/io/bundle.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "infsup/io/csv.hpp"
#include "infsup/linalg/errors.hpp"

namespace infsup {

namespace {

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  std::optional<std::string_view> next() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ >= text_.size()) return std::nullopt;
      if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      const std::size_t start = pos_;
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return text_.substr(start, pos_ - start);
    }
  }

  std::string_view expect(const char* what) {
    auto t = next();
    if (!t) throw InvalidInput(fmt::format("bundle: unexpected end of input, expected {}", what));
    return *t;
  }

  std::size_t count(const char* what) {
    const std::string_view t = expect(what);
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) {
      throw InvalidInput(fmt::format("bundle: bad {} '{}'", what, t));
    }
    return v;
  }

  double number() {
    const std::string s(expect("matrix entry"));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw InvalidInput(fmt::format("bundle: bad number '{}'", s));
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Matrix read_matrix(Tokenizer& tok) {
  const std::size_t rows = tok.count("row count");
  const std::size_t cols = tok.count("column count");
  // guard against absurd headers before allocating
  if (rows != 0 && cols > (std::size_t{1} << 28) / rows) {
    throw InvalidInput("bundle: matrix too large");
  }
  std::vector<double> e(rows * cols);
  for (double& v : e) v = tok.number();
  Matrix m(rows, cols, std::move(e));
  require_finite(m, "bundle");
  return m;
}

void append_matrix(std::string& out, const char* section, const Matrix& m) {
  out += fmt::format("{}\n{} {}\n", section, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += csv_number(m(i, j));
    }
    out += '\n';
  }
}

std::vector<Matrix> ordered_levels(std::map<std::size_t, Matrix>& by_level, const char* what) {
  std::vector<Matrix> out;
  for (auto& [k, m] : by_level) {
    if (k != out.size()) throw InvalidInput(fmt::format("bundle: {} levels are not 0..L-1", what));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

SpaceHierarchy parse_bundle(std::string_view text) {
  Tokenizer tok(text);
  std::optional<Matrix> gram_x, gram_y, form, rhs;
  std::map<std::size_t, Matrix> xs, ys;
  auto set_once = [](std::optional<Matrix>& slot, Matrix m, std::string_view name) {
    if (slot) throw InvalidInput(fmt::format("bundle: duplicate section {}", name));
    slot = std::move(m);
  };
  auto put_level = [](std::map<std::size_t, Matrix>& dst, std::size_t k, Matrix m) {
    if (!dst.emplace(k, std::move(m)).second) {
      throw InvalidInput(fmt::format("bundle: duplicate space level {}", k));
    }
  };
  while (auto key = tok.next()) {
    if (*key == "GRAM_X") {
      set_once(gram_x, read_matrix(tok), *key);
    } else if (*key == "GRAM_Y") {
      set_once(gram_y, read_matrix(tok), *key);
    } else if (*key == "FORM") {
      set_once(form, read_matrix(tok), *key);
    } else if (*key == "RHS") {
      set_once(rhs, read_matrix(tok), *key);
    } else if (*key == "SPACE") {
      const std::size_t k = tok.count("level");
      Matrix m = read_matrix(tok);
      put_level(xs, k, m);
      put_level(ys, k, std::move(m));
    } else if (*key == "SPACE_X") {
      const std::size_t k = tok.count("level");
      put_level(xs, k, read_matrix(tok));
    } else if (*key == "SPACE_Y") {
      const std::size_t k = tok.count("level");
      put_level(ys, k, read_matrix(tok));
    } else {
      throw InvalidInput(fmt::format("bundle: unknown section '{}'", *key));
    }
  }
  if (!gram_x || !form || !rhs) throw InvalidInput("bundle: GRAM_X, FORM and RHS are required");
  if (rhs->cols() != 1) throw InvalidInput("bundle: RHS must be a single column");

  SpaceHierarchy h;
  h.gram_x = std::move(*gram_x);
  h.gram_y = gram_y ? std::move(*gram_y) : h.gram_x;
  h.form = std::move(*form);
  h.rhs.assign(rhs->entries().begin(), rhs->entries().end());
  h.x_spaces = ordered_levels(xs, "X");
  h.y_spaces = ordered_levels(ys, "Y");
  validate_shapes(h);
  return h;
}

SpaceHierarchy read_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(fmt::format("bundle: cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_bundle(ss.str());
}

std::string format_bundle(const SpaceHierarchy& h) {
  validate_shapes(h);
  std::string out;
  append_matrix(out, "GRAM_X", h.gram_x);
  append_matrix(out, "GRAM_Y", h.gram_y);
  append_matrix(out, "FORM", h.form);
  append_matrix(out, "RHS", Matrix(h.rhs.size(), 1, h.rhs));
  const bool same = h.x_spaces == h.y_spaces;
  for (std::size_t k = 0; k < h.levels(); ++k) {
    if (same) {
      append_matrix(out, fmt::format("SPACE {}", k).c_str(), h.x_spaces[k]);
    } else {
      append_matrix(out, fmt::format("SPACE_X {}", k).c_str(), h.x_spaces[k]);
      append_matrix(out, fmt::format("SPACE_Y {}", k).c_str(), h.y_spaces[k]);
    }
  }
  return out;
}

}  // namespace infsup
