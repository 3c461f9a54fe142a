#pragma once

#include "matmean/format.hpp"
#include "matmean/positive_matrix.hpp"

namespace matmean {

enum class MatrixKind { hermitian, positive };

inline const char* matrix_kind_name(MatrixKind k) {
  return k == MatrixKind::hermitian ? "hermitian" : "positive";
}

/// Parse failure with the offending position; line and column are 1-based.
class MatrixParseError : public std::runtime_error {
 public:
  MatrixParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct MatrixFile {
  MatrixKind kind = MatrixKind::hermitian;
  HermitianMatrix h;
  HermitianMatrix k;
  double h_residual = 0.0;  // asymmetry the constructor symmetrized away
  double k_residual = 0.0;
};

namespace detail {

// a+bi with both parts in shortest round-trip form, e.g. -1.5+2e-3i
inline std::string complex_token(Complex z) {
  std::string out = format_double(z.real());
  const double im = z.imag();
  out += std::signbit(im) ? '-' : '+';
  out += format_double(std::abs(im));
  out += 'i';
  return out;
}

inline Complex parse_complex_token(const std::string& tok, int line, int column) {
  if (tok.empty() || tok.back() != 'i')
    throw MatrixParseError(line, column, "expected complex token 'a+bi', got '" + tok + "'");
  const std::string body = tok.substr(0, tok.size() - 1);
  // the split sign is the last +/- not directly after an exponent marker
  size_t split = std::string::npos;
  for (size_t i = body.size(); i-- > 1;) {
    const char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos)
    throw MatrixParseError(line, column, "missing imaginary part in '" + tok + "'");
  double re = 0.0, im = 0.0;
  if (!parse_double(body.substr(0, split), re))
    throw MatrixParseError(line, column, "bad real part in '" + tok + "'");
  // from_chars takes no leading '+': parse the magnitude, apply the sign
  if (!parse_double(body.substr(split + 1), im))
    throw MatrixParseError(line, column, "bad imaginary part in '" + tok + "'");
  if (body[split] == '-') im = -im;
  return {re, im};
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline ComplexMatrix parse_matrix_block(const std::vector<std::string>& lines, size_t& pos, int n,
                                        const char* which) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i, ++pos) {
    if (pos >= lines.size())
      throw MatrixParseError(static_cast<int>(pos) + 1, 1,
                             std::string("unexpected end of file inside matrix ") + which +
                                 " (row " + std::to_string(i + 1) + " of " + std::to_string(n) +
                                 ")");
    const std::vector<std::string> toks = split_ws(lines[pos]);
    if (static_cast<int>(toks.size()) != n)
      throw MatrixParseError(static_cast<int>(pos) + 1, 1,
                             std::string("matrix ") + which + " row " + std::to_string(i + 1) +
                                 " has " + std::to_string(toks.size()) + " entries, expected " +
                                 std::to_string(n));
    for (int j = 0; j < n; ++j)
      m(i, j) = parse_complex_token(toks[static_cast<size_t>(j)], static_cast<int>(pos) + 1, j + 1);
  }
  return m;
}

inline HermitianMatrix check_kind(const ComplexMatrix& m, MatrixKind kind, int first_line,
                                  const char* which) {
  const double residual = hermiticity_residual(m);
  const double bound = 1e-12 * (1.0 + m.max_abs());
  if (residual > bound) {
    std::ostringstream os;
    os << "matrix " << which << " is not hermitian: asymmetry residual " << residual
       << " exceeds " << bound;
    throw MatrixParseError(first_line, 1, os.str());
  }
  HermitianMatrix h(m);
  if (kind == MatrixKind::positive) {
    const SpectralDecomposition d = hermitian_eig(h);
    if (d.min_eigenvalue() <= 0.0) {
      std::ostringstream os;
      os << "matrix " << which << " declared positive but has eigenvalue "
         << d.min_eigenvalue();
      throw MatrixParseError(first_line, 1, os.str());
    }
  }
  return h;
}

}  // namespace detail

/// Format:
///   line 1:  n <dim> <hermitian|positive>
///   n lines of n whitespace-separated complex tokens a+bi  (matrix H)
///   one blank line
///   n lines for matrix K
inline std::string write_matrix_file(const HermitianMatrix& h, const HermitianMatrix& k,
                                     MatrixKind kind) {
  require_same_dim(h.matrix(), k.matrix(), "write_matrix_file");
  const int n = h.dim();
  std::string out = "n " + std::to_string(n) + " " + matrix_kind_name(kind) + "\n";
  const auto block = [&](const HermitianMatrix& m) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j) out += ' ';
        out += detail::complex_token(m(i, j));
      }
      out += '\n';
    }
  };
  block(h);
  out += '\n';
  block(k);
  return out;
}

inline MatrixFile parse_matrix_file(const std::string& text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && detail::split_ws(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw MatrixParseError(1, 1, "empty file");

  const std::vector<std::string> head = detail::split_ws(lines[0]);
  if (head.size() != 3 || head[0] != "n")
    throw MatrixParseError(1, 1, "expected header 'n <dim> <hermitian|positive>'");
  int n = 0;
  try {
    n = std::stoi(head[1]);
  } catch (const std::exception&) {
    throw MatrixParseError(1, 3, "bad dimension '" + head[1] + "'");
  }
  if (n < 1) throw MatrixParseError(1, 3, "dimension must be >= 1");
  if (n > 512) throw MatrixParseError(1, 3, "dimension " + std::to_string(n) + " exceeds 512");
  MatrixKind kind;
  if (head[2] == "hermitian")
    kind = MatrixKind::hermitian;
  else if (head[2] == "positive")
    kind = MatrixKind::positive;
  else
    throw MatrixParseError(1, 5, "unknown kind '" + head[2] + "'");

  size_t pos = 1;
  const int h_line = static_cast<int>(pos) + 1;
  const ComplexMatrix hm = detail::parse_matrix_block(lines, pos, n, "H");
  if (pos >= lines.size() || !detail::split_ws(lines[pos]).empty())
    throw MatrixParseError(static_cast<int>(pos) + 1, 1, "expected blank line between matrices");
  ++pos;
  const int k_line = static_cast<int>(pos) + 1;
  const ComplexMatrix km = detail::parse_matrix_block(lines, pos, n, "K");
  if (pos < lines.size() && !detail::split_ws(lines[pos]).empty())
    throw MatrixParseError(static_cast<int>(pos) + 1, 1, "trailing content after matrix K");

  MatrixFile f{kind, detail::check_kind(hm, kind, h_line, "H"),
               detail::check_kind(km, kind, k_line, "K"), hermiticity_residual(hm),
               hermiticity_residual(km)};
  return f;
}

}  // namespace matmean
