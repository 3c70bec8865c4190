#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bfzeta/errors.hpp"
#include "bfzeta/twisted_complex.hpp"

namespace bfzeta {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    Line line{number, {}};
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

long parse_long(const std::string& s, int line, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected an integer for ") + what + ", got '" + s + "'");
  }
  if (used != s.size()) throw ParseError(line, std::string("expected an integer for ") + what + ", got '" + s + "'");
  return v;
}

double parse_double(const std::string& s, int line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a real number, got '" + s + "'");
  }
  if (used != s.size()) throw ParseError(line, "expected a real number, got '" + s + "'");
  return v;
}

class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}

  ComplexFile read() {
    ComplexFile f;
    while (pos_ < lines_.size()) {
      const Line& l = lines_[pos_++];
      const std::string& kw = l.tokens[0];
      if (kw == "complex") {
        expect_args(l, 1);
        top_ = static_cast<int>(parse_long(l.tokens[1], l.number, "top degree"));
        if (top_ < 0) throw ValidationError(l.number, "complex", "top degree must be non-negative");
      } else if (kw == "cells") {
        require_header(l);
        expect_args(l, top_ + 1);
        f.cells.cell_counts.clear();
        for (int k = 0; k <= top_; ++k) {
          const long c = parse_long(l.tokens[k + 1], l.number, "cell count");
          if (c < 0) throw ValidationError(l.number, "cells", "cell counts must be non-negative");
          f.cells.cell_counts.push_back(static_cast<int>(c));
        }
      } else if (kw == "generators") {
        f.cells.generators.assign(l.tokens.begin() + 1, l.tokens.end());
      } else if (kw == "relator") {
        expect_args(l, 1);
        f.cells.relators.push_back(parse_word(l.tokens[1], f.cells.generators, l.number));
      } else if (kw == "boundary") {
        require_cells(f, l);
        expect_args(l, 1);
        const int k = static_cast<int>(parse_long(l.tokens[1], l.number, "boundary degree"));
        if (k < 1 || k > top_) throw ValidationError(l.number, "boundary", "degree out of range");
        const int rows = f.cells.cell_counts[k - 1], cols = f.cells.cell_counts[k];
        std::vector<std::vector<GroupRingElement>> m;
        for (int j = 0; j < rows; ++j) {
          if (cols == 0) {
            m.emplace_back();
            continue;
          }
          const Line& row = next_row(l);
          if (static_cast<int>(row.tokens.size()) != cols) {
            throw ParseError(row.number, "boundary row needs " + std::to_string(cols) + " entries");
          }
          std::vector<GroupRingElement> entries;
          for (const auto& tok : row.tokens) entries.push_back(parse_group_ring(tok, f.cells.generators, row.number));
          m.push_back(std::move(entries));
        }
        f.cells.boundary[k] = std::move(m);
      } else if (kw == "rep") {
        expect_args(l, 1);
        const long r = parse_long(l.tokens[1], l.number, "rank");
        if (r < 1) throw ValidationError(l.number, "rep", "rank must be positive");
        f.rep.rank = static_cast<int>(r);
        rank_set_ = true;
      } else if (kw == "gen") {
        expect_args(l, 1);
        if (!rank_set_) throw ParseError(l.number, "'gen' before 'rep'");
        const std::string& name = l.tokens[1];
        if (std::find(f.cells.generators.begin(), f.cells.generators.end(), name) == f.cells.generators.end()) {
          throw ValidationError(l.number, "gen", "unknown generator '" + name + "'");
        }
        f.rep.images[name] = read_matrix(l, f.rep.rank);
      } else if (kw == "gram") {
        require_cells(f, l);
        expect_args(l, 1);
        const int k = static_cast<int>(parse_long(l.tokens[1], l.number, "gram degree"));
        if (k < 0 || k > top_) throw ValidationError(l.number, "gram", "degree out of range");
        f.grams[k] = read_matrix(l, f.cells.cell_counts[k] * f.rep.rank);
      } else if (kw == "dual") {
        expect_args(l, 0);
        f.cells.dual = true;
      } else {
        throw ParseError(l.number, "unknown keyword '" + kw + "'");
      }
    }
    if (top_ < 0) throw ParseError(0, "missing 'complex' header");
    if (static_cast<int>(f.cells.cell_counts.size()) != top_ + 1) throw ParseError(0, "missing 'cells' line");
    for (int k = 1; k <= top_; ++k) {
      if (!f.cells.boundary.count(k)) {
        f.cells.boundary[k] = std::vector<std::vector<GroupRingElement>>(
            f.cells.cell_counts[k - 1], std::vector<GroupRingElement>(f.cells.cell_counts[k]));
      }
    }
    return f;
  }

 private:
  void expect_args(const Line& l, std::size_t n) const {
    if (l.tokens.size() != n + 1) {
      throw ParseError(l.number, "'" + l.tokens[0] + "' takes " + std::to_string(n) + " argument(s)");
    }
  }

  void require_header(const Line& l) const {
    if (top_ < 0) throw ParseError(l.number, "'" + l.tokens[0] + "' before 'complex'");
  }

  void require_cells(const ComplexFile& f, const Line& l) const {
    require_header(l);
    if (static_cast<int>(f.cells.cell_counts.size()) != top_ + 1) throw ParseError(l.number, "'" + l.tokens[0] + "' before 'cells'");
  }

  const Line& next_row(const Line& owner) {
    if (pos_ >= lines_.size()) throw ParseError(owner.number, "unexpected end of file in '" + owner.tokens[0] + "' block");
    return lines_[pos_++];
  }

  Matrix read_matrix(const Line& owner, int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      const Line& row = next_row(owner);
      if (static_cast<int>(row.tokens.size()) != 2 * n) {
        throw ParseError(row.number, "matrix row needs " + std::to_string(2 * n) + " numbers (re im pairs)");
      }
      for (int j = 0; j < n; ++j) {
        m(i, j) = cplx(parse_double(row.tokens[2 * j], row.number), parse_double(row.tokens[2 * j + 1], row.number));
      }
    }
    return m;
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  int top_ = -1;
  bool rank_set_ = false;
};

void write_matrix(std::ostream& out, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j).real() << ' ' << m(i, j).imag();
    }
    out << '\n';
  }
}

}  // namespace

ComplexFile read_complex(std::istream& in) { return Reader(tokenize(in)).read(); }

ComplexFile read_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_complex(in);
}

void write_complex(std::ostream& out, const ComplexFile& f) {
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  const CellComplex& cc = f.cells;
  out << "complex " << cc.top_degree() << '\n';
  out << "cells";
  for (int c : cc.cell_counts) out << ' ' << c;
  out << '\n';
  out << "generators";
  for (const auto& g : cc.generators) out << ' ' << g;
  out << '\n';
  for (const auto& r : cc.relators) out << "relator " << format_word(r, cc.generators) << '\n';
  for (const auto& [k, m] : cc.boundary) {
    out << "boundary " << k << '\n';
    for (const auto& row : m) {
      if (row.empty()) continue;
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << format_group_ring(row[i], cc.generators);
      out << '\n';
    }
  }
  out << "rep " << f.rep.rank << '\n';
  for (const auto& g : cc.generators) {
    auto it = f.rep.images.find(g);
    if (it == f.rep.images.end()) continue;
    out << "gen " << g << '\n';
    write_matrix(out, it->second);
  }
  for (const auto& [k, m] : f.grams) {
    out << "gram " << k << '\n';
    write_matrix(out, m);
  }
  if (cc.dual) out << "dual\n";
  out.flags(old_flags);
  out.precision(old_precision);
}

TwistedComplex build_from_file(const ComplexFile& f) {
  TwistedComplex tc = build_twisted_complex(f.cells, f.rep);
  if (f.grams.empty()) return tc;
  std::vector<Matrix> grams;
  for (int k = 0; k <= tc.top_degree(); ++k) {
    auto it = f.grams.find(k);
    grams.push_back(it == f.grams.end() ? Matrix(Matrix::Identity(tc.dim(k), tc.dim(k))) : it->second);
  }
  return tc.with_grams(std::move(grams));
}

}  // namespace bfzeta
