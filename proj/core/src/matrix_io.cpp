#include "hcyclic/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "hcyclic/error.hpp"
#include "json.hpp"

namespace hcyclic {

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, std::size_t column,
                             const std::string& message) {
  throw Error(ErrorKind::kParse,
              source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message);
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double to_double(const Token& t, const std::string& source, std::size_t line) {
  double value = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (!t.text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    parse_fail(source, line, t.column, "expected a number, got '" + std::string(t.text) + "'");
  }
  return value;
}

long long to_integer(const Token& t, const std::string& source, std::size_t line) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    parse_fail(source, line, t.column, "expected an integer, got '" + std::string(t.text) + "'");
  }
  return value;
}

Complex complex_from_json(const json& pair, const std::string& what) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    throw Error(ErrorKind::kParse, what + ": complex values must be [re, im] pairs");
  }
  return {pair[0].get<double>(), pair[1].get<double>()};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Recover line/column from the byte offset nlohmann reports.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    parse_fail(source, line, column, "malformed JSON");
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kParse, path.string() + ": cannot open file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

ComplexMatrix parse_matrix_market(std::istream& in, const std::string& source) {
  std::string raw;
  std::size_t line_no = 0;

  if (!std::getline(in, raw)) parse_fail(source, 1, 1, "empty file");
  ++line_no;
  const auto header = tokenize(raw);
  if (header.size() != 5 || lower(header[0].text) != "%%matrixmarket" || lower(header[1].text) != "matrix") {
    parse_fail(source, line_no, 1, "expected '%%MatrixMarket matrix <layout> <field> <symmetry>'");
  }
  const std::string layout = lower(header[2].text);
  const std::string field = lower(header[3].text);
  const std::string symmetry = lower(header[4].text);
  if (layout != "array" && layout != "coordinate") {
    parse_fail(source, line_no, header[2].column, "unsupported layout '" + layout + "'");
  }
  if (field != "real" && field != "integer" && field != "complex") {
    parse_fail(source, line_no, header[3].column, "unsupported field '" + field + "'");
  }
  if (symmetry != "general") {
    parse_fail(source, line_no, header[4].column, "only 'general' symmetry is supported");
  }
  const bool complex_field = field == "complex";
  const std::size_t value_tokens = complex_field ? 2 : 1;

  auto next_data_line = [&](std::vector<Token>& tokens) {
    while (std::getline(in, raw)) {
      ++line_no;
      tokens = tokenize(raw);
      if (tokens.empty() || tokens.front().text.front() == '%') continue;
      return true;
    }
    return false;
  };

  std::vector<Token> tokens;
  if (!next_data_line(tokens)) parse_fail(source, line_no + 1, 1, "missing size line");
  const std::size_t size_tokens = layout == "array" ? 2 : 3;
  if (tokens.size() != size_tokens) {
    parse_fail(source, line_no, 1, "size line needs " + std::to_string(size_tokens) + " integers");
  }
  const long long rows = to_integer(tokens[0], source, line_no);
  const long long cols = to_integer(tokens[1], source, line_no);
  if (rows < 1 || cols < 1) parse_fail(source, line_no, 1, "dimensions must be positive");
  ComplexMatrix a = ComplexMatrix::Zero(rows, cols);

  auto read_value = [&](const std::vector<Token>& t, std::size_t at) {
    const double re = to_double(t[at], source, line_no);
    const double im = complex_field ? to_double(t[at + 1], source, line_no) : 0.0;
    return Complex{re, im};
  };

  if (layout == "array") {
    for (long long c = 0; c < cols; ++c) {
      for (long long r = 0; r < rows; ++r) {
        if (!next_data_line(tokens)) {
          parse_fail(source, line_no + 1, 1,
                     "expected " + std::to_string(rows * cols) + " values, file ended early");
        }
        if (tokens.size() != value_tokens) {
          parse_fail(source, line_no, tokens.front().column,
                     "expected " + std::to_string(value_tokens) + " value(s) per line");
        }
        a(r, c) = read_value(tokens, 0);
      }
    }
  } else {
    const long long nnz = to_integer(tokens[2], source, line_no);
    if (nnz < 0) parse_fail(source, line_no, tokens[2].column, "negative entry count");
    for (long long e = 0; e < nnz; ++e) {
      if (!next_data_line(tokens)) {
        parse_fail(source, line_no + 1, 1,
                   "expected " + std::to_string(nnz) + " entries, file ended early");
      }
      if (tokens.size() != 2 + value_tokens) {
        parse_fail(source, line_no, tokens.front().column,
                   "expected 'row col value" + std::string(complex_field ? " imag'" : "'"));
      }
      const long long i = to_integer(tokens[0], source, line_no);
      const long long j = to_integer(tokens[1], source, line_no);
      if (i < 1 || i > rows) parse_fail(source, line_no, tokens[0].column, "row index out of range");
      if (j < 1 || j > cols) parse_fail(source, line_no, tokens[1].column, "column index out of range");
      a(i - 1, j - 1) += read_value(tokens, 2);
    }
  }
  while (next_data_line(tokens)) {
    parse_fail(source, line_no, tokens.front().column, "unexpected trailing data");
  }
  return a;
}

ComplexMatrix parse_matrix_json(const std::string& text, const std::string& source) {
  const json doc = parse_json_text(text, source);
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") || !doc.contains("entries")) {
    throw Error(ErrorKind::kParse, source + ": expected an object with rows, cols and entries");
  }
  if (!doc["rows"].is_number_integer() || !doc["cols"].is_number_integer()) {
    throw Error(ErrorKind::kParse, source + ": rows and cols must be integers");
  }
  const long long rows = doc["rows"].get<long long>();
  const long long cols = doc["cols"].get<long long>();
  if (rows < 1 || cols < 1) {
    throw Error(ErrorKind::kParse, source + ": dimensions must be positive");
  }
  const json& entries = doc["entries"];
  if (!entries.is_array() || static_cast<long long>(entries.size()) != rows * cols) {
    throw Error(ErrorKind::kParse, source + ": entries must hold rows*cols = " +
                                       std::to_string(rows * cols) + " values, found " +
                                       std::to_string(entries.is_array() ? entries.size() : 0));
  }
  ComplexMatrix a(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    for (long long j = 0; j < cols; ++j) {
      a(i, j) = complex_from_json(entries[static_cast<std::size_t>(i * cols + j)],
                                  source + ": entry " + std::to_string(i * cols + j));
    }
  }
  return a;
}

ComplexMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
  const std::string text = slurp(path);
  if (format == MatrixFormat::kAuto) {
    const auto first = text.find_first_not_of(" \t\r\n");
    const bool looks_json = path.extension() == ".json" || (first != std::string::npos && text[first] == '{');
    format = looks_json ? MatrixFormat::kJson : MatrixFormat::kMatrixMarket;
  }
  if (format == MatrixFormat::kJson) return parse_matrix_json(text, path.string());
  std::istringstream in(text);
  return parse_matrix_market(in, path.string());
}

void write_matrix_market(std::ostream& out, const ComplexMatrix& a) {
  const bool complex_field = a.size() > 0 && a.imag().cwiseAbs().maxCoeff() != 0.0;
  out << "%%MatrixMarket matrix array " << (complex_field ? "complex" : "real") << " general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  char buf[64];
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      std::snprintf(buf, sizeof buf, "%.17g", a(r, c).real());
      out << buf;
      if (complex_field) {
        std::snprintf(buf, sizeof buf, " %.17g", a(r, c).imag());
        out << buf;
      }
      out << '\n';
    }
  }
}

std::string matrix_to_json(const ComplexMatrix& a, int indent) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) entries.push_back(complex_to_json(a(i, j)));
  }
  json doc = {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
  return doc.dump(indent);
}

JordanChain parse_chain_json(const std::string& text, const std::string& source) {
  const json doc = parse_json_text(text, source);
  if (!doc.is_object() || !doc.contains("eigenvalue") || !doc.contains("vectors")) {
    throw Error(ErrorKind::kParse, source + ": chain needs eigenvalue and vectors");
  }
  JordanChain chain;
  const std::string side = doc.value("side", std::string("right"));
  if (side == "right") {
    chain.side = ChainSide::kRight;
  } else if (side == "left") {
    chain.side = ChainSide::kLeft;
  } else {
    throw Error(ErrorKind::kParse, source + ": side must be 'right' or 'left'");
  }
  chain.eigenvalue = complex_from_json(doc["eigenvalue"], source + ": eigenvalue");
  const json& vectors = doc["vectors"];
  if (!vectors.is_array() || vectors.empty()) {
    throw Error(ErrorKind::kParse, source + ": vectors must be a nonempty array");
  }
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    const json& v = vectors[j];
    if (!v.is_array() || v.empty()) {
      throw Error(ErrorKind::kParse, source + ": vector " + std::to_string(j + 1) + " is not a nonempty array");
    }
    ComplexVector x(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      x(static_cast<Eigen::Index>(i)) = complex_from_json(v[i], source + ": vector " + std::to_string(j + 1));
    }
    if (!chain.vectors.empty() && x.size() != chain.vectors.front().size()) {
      throw Error(ErrorKind::kParse, source + ": chain vectors differ in dimension");
    }
    chain.vectors.push_back(std::move(x));
  }
  return chain;
}

JordanChain read_chain(const std::filesystem::path& path) {
  return parse_chain_json(slurp(path), path.string());
}

std::string chain_to_json(const JordanChain& chain, int indent) {
  json vectors = json::array();
  for (const auto& v : chain.vectors) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) entries.push_back(complex_to_json(v(i)));
    vectors.push_back(std::move(entries));
  }
  json doc = {{"side", chain.side == ChainSide::kRight ? "right" : "left"},
              {"eigenvalue", complex_to_json(chain.eigenvalue)},
              {"vectors", std::move(vectors)}};
  return doc.dump(indent);
}

}  // namespace hcyclic
