#include "ggv/harness/structure_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ggv/error.hpp"

namespace ggv {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> split_words(std::string_view s, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back({std::string(s.substr(start, i - start)), base + start});
  }
  return out;
}

std::string quoted(const std::string& s) { return s.empty() ? "end of line" : "'" + s + "'"; }

class Reader {
 public:
  Structure run(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = std::min(text.find('\n', pos), text.size());
      ++line_;
      std::string_view l = text.substr(pos, end - pos);
      if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
      const std::size_t hash = l.find('#');
      if (hash != std::string_view::npos) l = l.substr(0, hash);
      statement(l);
      pos = end + 1;
    }
    return finish();
  }

 private:
  std::size_t line_ = 0;
  int dim_ = 0;
  Structure s_;
  std::vector<bool> box_set_, hyp_box_set_;
  std::vector<std::pair<double, double>> hyp_box_;
  std::optional<Expression> hyp_exclusion_;
  std::vector<Expression> hyp_param_;
  bool has_hyp_ = false;

  [[noreturn]] void fail(std::size_t column, const std::string& expected, const std::string& found) const {
    throw ParseError(column, expected, found, line_);
  }

  void statement(std::string_view l) {
    const auto words = split_words(l, 0);
    if (words.empty()) return;
    const std::size_t eq = l.find('=');
    if (eq == std::string_view::npos) fail(l.size(), "'='", "end of line");
    const auto keys = split_words(l.substr(0, eq), 0);
    if (keys.empty()) fail(eq, "key", "'='");
    std::size_t rhs_col = eq + 1;
    while (rhs_col < l.size() && (l[rhs_col] == ' ' || l[rhs_col] == '\t')) ++rhs_col;
    const std::string_view rhs = l.substr(rhs_col);

    const std::string& head = keys[0].text;
    if (head == "chart") return chart_line(keys, rhs, rhs_col);
    if (dim_ == 0) fail(keys[0].column, "'chart dim' before other entries", quoted(head));
    if (head == "A" || head == "pi" || head == "sigma" || head == "gamma" || head == "psi")
      return tensor_line(keys, rhs, rhs_col);
    if (head == "lee") return lee_line(keys, rhs, rhs_col);
    if (head == "hyp") return hyp_line(keys, rhs, rhs_col);
    fail(keys[0].column, "section name", quoted(head));
  }

  Expression expr(std::string_view rhs, std::size_t rhs_col, int dim) const {
    try {
      return parse(rhs, dim);
    } catch (const ParseError& e) {
      throw e.at(line_, rhs_col);
    }
  }

  int index(const Token& t, int hi) const {
    int v = 0;
    const auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size() || v < 1)
      fail(t.column, "index in 1.." + std::to_string(hi), quoted(t.text));
    if (v > hi)
      throw DimensionMismatch("line " + std::to_string(line_) + ", column " + std::to_string(t.column + 1) +
                              ": index " + t.text + " exceeds " + std::to_string(hi));
    return v - 1;
  }

  int coordinate_name(const Token& t, int hi) const {
    if (t.text.size() < 2 || t.text[0] != 'x') fail(t.column, "coordinate name x1..x" + std::to_string(hi), quoted(t.text));
    return index({t.text.substr(1), t.column + 1}, hi);
  }

  std::pair<double, double> interval(std::string_view rhs, std::size_t rhs_col) const {
    const auto nums = split_words(rhs, rhs_col);
    if (nums.size() != 2) fail(rhs_col, "two numbers 'lo hi'", quoted(std::string(rhs)));
    double v[2];
    for (int k = 0; k < 2; ++k) {
      const std::string& t = nums[sz(k)].text;
      const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v[k]);
      if (ec != std::errc() || p != t.data() + t.size()) fail(nums[sz(k)].column, "number", quoted(t));
    }
    if (!(v[0] < v[1])) fail(nums[0].column, "lo < hi", quoted(std::string(rhs)));
    return {v[0], v[1]};
  }

  void expect_keys(const std::vector<Token>& keys, std::size_t n, const std::string& what) const {
    if (keys.size() != n) {
      const std::size_t col = keys.size() > n ? keys[n].column : keys.back().column + keys.back().text.size();
      fail(col, what, keys.size() > n ? quoted(keys[n].text) : "'='");
    }
  }

  void chart_line(const std::vector<Token>& keys, std::string_view rhs, std::size_t rhs_col) {
    if (keys.size() < 2) fail(keys[0].column + 5, "'dim', 'box' or 'exclude'", "'='");
    const std::string& what = keys[1].text;
    if (what == "dim") {
      expect_keys(keys, 2, "'='");
      if (dim_ != 0) fail(keys[0].column, "a single 'chart dim'", "'chart dim' again");
      int d = 0;
      const std::string t(rhs);
      const auto trimmed = split_words(rhs, rhs_col);
      if (trimmed.size() != 1) fail(rhs_col, "dimension", quoted(t));
      const auto& w = trimmed[0].text;
      const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), d);
      if (ec != std::errc() || p != w.data() + w.size() || d < 2 || d > kMaxJetDim)
        fail(rhs_col, "dimension in 2.." + std::to_string(kMaxJetDim), quoted(w));
      dim_ = d;
      s_.chart = Chart(d, -1.0, 1.0);
      box_set_.assign(sz(d), false);
      hyp_box_.assign(sz(d - 1), {-1.0, 1.0});
      hyp_box_set_.assign(sz(d - 1), false);
      hyp_param_.assign(sz(d), Expression::constant(0.0));
      return;
    }
    if (dim_ == 0) fail(keys[1].column, "'dim' first", quoted(what));
    if (what == "box") {
      expect_keys(keys, 3, "'='");
      const int k = coordinate_name(keys[2], dim_);
      if (box_set_[sz(k)]) fail(keys[2].column, "one box line per coordinate", quoted(keys[2].text));
      box_set_[sz(k)] = true;
      s_.chart.box[sz(k)] = interval(rhs, rhs_col);
      return;
    }
    if (what == "exclude") {
      expect_keys(keys, 2, "'='");
      if (s_.chart.exclusion) fail(keys[1].column, "a single 'chart exclude'", "'exclude' again");
      s_.chart.exclusion = expr(rhs, rhs_col, dim_);
      return;
    }
    fail(keys[1].column, "'dim', 'box' or 'exclude'", quoted(what));
  }

  template <class M>
  void set_entry(M& slot, int i, int j, const Expression& e, const Token& at_token) const {
    if (!slot.at(i, j).is_zero()) fail(at_token.column, "one line per entry", "a repeated entry");
    slot.set(i, j, e);
  }

  void tensor_line(const std::vector<Token>& keys, std::string_view rhs, std::size_t rhs_col) {
    expect_keys(keys, 3, "'='");
    const std::string& name = keys[0].text;
    const int i = index(keys[1], dim_);
    const int j = index(keys[2], dim_);
    const bool gamma = name == "gamma";
    if (name != "A" && (gamma ? i > j : i >= j))
      fail(keys[2].column, gamma ? "column >= row" : "column > row", quoted(keys[2].text));
    const Expression e = expr(rhs, rhs_col, dim_);
    if (gamma || name == "psi") {
      if (!s_.metric) s_.metric = GMetric{SymmetricTwoTensor(dim_), TwoForm(dim_)};
      if (gamma) set_entry(s_.metric->gamma, i, j, e, keys[0]);
      else set_entry(s_.metric->psi, i, j, e, keys[0]);
      return;
    }
    if (!s_.gcs) s_.gcs = GcsData{Endomorphism(dim_), Bivector(dim_), TwoForm(dim_), s_.chart};
    if (name == "A") set_entry(s_.gcs->a, i, j, e, keys[0]);
    else if (name == "pi") set_entry(s_.gcs->pi, i, j, e, keys[0]);
    else set_entry(s_.gcs->sigma, i, j, e, keys[0]);
  }

  void lee_line(const std::vector<Token>& keys, std::string_view rhs, std::size_t rhs_col) {
    expect_keys(keys, 2, "'='");
    const int i = index(keys[1], dim_);
    if (!s_.lee) s_.lee = LeeForm(dim_);
    if (!(*s_.lee)[i].is_zero()) fail(keys[0].column, "one line per entry", "a repeated entry");
    (*s_.lee)[i] = expr(rhs, rhs_col, dim_);
  }

  void hyp_line(const std::vector<Token>& keys, std::string_view rhs, std::size_t rhs_col) {
    if (keys.size() >= 2 && keys[1].text == "box") {
      expect_keys(keys, 3, "'='");
      const int k = coordinate_name(keys[2], dim_ - 1);
      if (hyp_box_set_[sz(k)]) fail(keys[2].column, "one box line per parameter", quoted(keys[2].text));
      hyp_box_set_[sz(k)] = true;
      hyp_box_[sz(k)] = interval(rhs, rhs_col);
      return;
    }
    if (keys.size() >= 2 && keys[1].text == "exclude") {
      expect_keys(keys, 2, "'='");
      if (hyp_exclusion_) fail(keys[1].column, "a single 'hyp exclude'", "'exclude' again");
      hyp_exclusion_ = expr(rhs, rhs_col, dim_ - 1);
      return;
    }
    expect_keys(keys, 2, "'='");
    const int i = index(keys[1], dim_);
    if (!hyp_param_[sz(i)].is_zero()) fail(keys[0].column, "one line per entry", "a repeated entry");
    hyp_param_[sz(i)] = expr(rhs, rhs_col, dim_ - 1);
    has_hyp_ = true;
  }

  Structure finish() {
    if (dim_ == 0) throw ParseError(0, "'chart dim'", "end of input", line_);
    if (s_.gcs) s_.gcs->chart = s_.chart;
    if (has_hyp_) {
      Chart pc(dim_ - 1, -1.0, 1.0);
      pc.box = hyp_box_;
      pc.exclusion = hyp_exclusion_;
      s_.hyp = Hypersurface(hyp_param_, pc);
    }
    return std::move(s_);
  }
};

std::string number(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_chart(std::ostringstream& out, const char* prefix, const Chart& c, bool with_dim) {
  if (with_dim) out << "chart dim = " << c.dim << "\n";
  for (int k = 0; k < c.dim; ++k)
    out << prefix << " box x" << k + 1 << " = " << number(c.box[sz(k)].first) << " " << number(c.box[sz(k)].second)
        << "\n";
  if (c.exclusion) out << prefix << " exclude = " << c.exclusion->print() << "\n";
}

/// Returns the number of lines written.
template <class M>
int write_matrix(std::ostringstream& out, const char* name, const M& t, int first_offset) {
  int n = 0;
  for (int i = 0; i < t.dim(); ++i)
    for (int j = first_offset < 0 ? 0 : i + first_offset; j < t.dim(); ++j) {
      const Expression e = t.at(i, j);
      if (e.is_zero()) continue;
      out << name << " " << i + 1 << " " << j + 1 << " = " << e.print() << "\n";
      ++n;
    }
  return n;
}

}  // namespace

GHermitian Structure::hermitian() const {
  if (!has_hermitian()) throw UsageError("structure has no generalized Hermitian data");
  return {*gcs, *metric};
}

Structure parse_structure(std::string_view text) { return Reader().run(text); }

Structure load_structure_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read structure file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str());
}

std::string write_structure(const Structure& s) {
  std::ostringstream out;
  write_chart(out, "chart", s.chart, true);
  if (s.gcs) {
    const int n = write_matrix(out, "A", s.gcs->a, -1) + write_matrix(out, "pi", s.gcs->pi, 1) +
                  write_matrix(out, "sigma", s.gcs->sigma, 1);
    // A zero line keeps an all-zero section present.
    if (n == 0) out << "A 1 1 = 0\n";
  }
  if (s.metric) {
    const int n = write_matrix(out, "gamma", s.metric->gamma, 0) + write_matrix(out, "psi", s.metric->psi, 1);
    if (n == 0) out << "gamma 1 1 = 0\n";
  }
  if (s.lee) {
    int n = 0;
    for (int i = 0; i < s.lee->dim(); ++i)
      if (!(*s.lee)[i].is_zero()) {
        out << "lee " << i + 1 << " = " << (*s.lee)[i].print() << "\n";
        ++n;
      }
    if (n == 0) out << "lee 1 = 0\n";
  }
  if (s.hyp) {
    for (int i = 0; i < s.hyp->ambient_dim(); ++i)
      if (!s.hyp->param()[sz(i)].is_zero()) out << "hyp " << i + 1 << " = " << s.hyp->param()[sz(i)].print() << "\n";
    write_chart(out, "hyp", s.hyp->param_chart(), false);
  }
  return out.str();
}

}  // namespace ggv
