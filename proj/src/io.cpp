#include "thick/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "thick/error.hpp"

namespace thick {

namespace {

// Line reader that skips blank and comment lines and remembers line numbers.
class Lines {
 public:
  Lines(std::istream& in, std::string source, bool comments)
      : in_(in), source_(std::move(source)), comments_(comments) {}

  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      if (comments_) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      }
      tokens.clear();
      std::istringstream ss(line);
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  void require(std::vector<std::string>& tokens, const char* what) {
    if (!next(tokens)) fail(std::string("unexpected end of input, expected ") + what);
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorKind::Parse, source_ + ":" + std::to_string(number_) + ": " + message);
  }

  std::size_t count(const std::string& tok, const char* what) const {
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size()) fail(std::string("bad ") + what + " '" + tok + "'");
    return v;
  }

  double real(const std::string& tok) const {
    // strtod accepts the full %.17g output and hex floats.
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v)) fail("bad coordinate '" + tok + "'");
    return v;
  }

 private:
  std::istream& in_;
  std::string source_;
  bool comments_;
  std::size_t number_ = 0;
};

// Reads the SCX header and simplices; stops at a line starting with "n" (EMB)
// or at end of input.
SimplicialComplex read_scx_block(Lines& lines, std::vector<std::string>& tokens, bool& saw_n) {
  lines.require(tokens, "'scx <k> <V>' header");
  if (tokens.size() != 3 || tokens[0] != "scx") lines.fail("expected header 'scx <k> <V>'");
  const std::size_t k = lines.count(tokens[1], "dimension");
  const std::size_t v = lines.count(tokens[2], "vertex count");
  std::vector<Simplex> top;
  saw_n = false;
  while (lines.next(tokens)) {
    if (tokens[0] == "n") {
      saw_n = true;
      break;
    }
    if (tokens.size() > k + 1) lines.fail("simplex has more than k+1 = " + std::to_string(k + 1) + " vertices");
    Simplex s;
    for (const auto& tok : tokens) {
      const std::size_t id = lines.count(tok, "vertex id");
      if (id >= v) lines.fail("vertex id " + tok + " out of range for V = " + std::to_string(v));
      s.push_back(static_cast<VertexId>(id));
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) lines.fail("repeated vertex in simplex");
    top.push_back(std::move(s));
  }
  try {
    return SimplicialComplex::build(top, v, static_cast<int>(k));
  } catch (const Error& e) {
    lines.fail(e.what());
  }
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

SimplicialComplex parse_scx(std::istream& in, const std::string& source) {
  Lines lines(in, source, true);
  std::vector<std::string> tokens;
  bool saw_n = false;
  SimplicialComplex c = read_scx_block(lines, tokens, saw_n);
  if (saw_n) lines.fail("unexpected 'n' line in SCX input");
  return c;
}

EmbeddedComplex parse_emb(std::istream& in, const std::string& source) {
  Lines lines(in, source, true);
  std::vector<std::string> tokens;
  bool saw_n = false;
  SimplicialComplex c = read_scx_block(lines, tokens, saw_n);
  if (!saw_n) lines.fail("missing 'n <ambient-dim>' line");
  if (tokens.size() != 2) lines.fail("expected 'n <ambient-dim>'");
  const std::size_t n = lines.count(tokens[1], "ambient dimension");
  if (n == 0) lines.fail("ambient dimension must be positive");
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(c.vertex_count()));
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    lines.require(tokens, "a coordinate line");
    if (tokens.size() != n) lines.fail("expected " + std::to_string(n) + " coordinates");
    for (std::size_t i = 0; i < n; ++i) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(v)) = lines.real(tokens[i]);
    }
  }
  if (lines.next(tokens)) lines.fail("trailing content after coordinates");
  try {
    return EmbeddedComplex(std::move(c), std::move(x));
  } catch (const Error& e) {
    lines.fail(e.what());
  }
}

EmbeddedComplex parse_off(std::istream& in, const std::string& source) {
  Lines lines(in, source, true);
  std::vector<std::string> tokens;
  lines.require(tokens, "'OFF' header");
  if (tokens[0] != "OFF") lines.fail("expected 'OFF'");
  tokens.erase(tokens.begin());
  if (tokens.empty()) lines.require(tokens, "'<V> <F> <E>' counts");
  if (tokens.size() < 2 || tokens.size() > 3) lines.fail("expected '<V> <F> <E>' counts");
  const std::size_t v = lines.count(tokens[0], "vertex count");
  const std::size_t f = lines.count(tokens[1], "face count");
  Eigen::MatrixXd x(3, static_cast<Eigen::Index>(v));
  for (std::size_t i = 0; i < v; ++i) {
    lines.require(tokens, "a vertex line");
    if (tokens.size() < 3) lines.fail("vertex line needs 3 coordinates");
    for (int j = 0; j < 3; ++j) x(j, static_cast<Eigen::Index>(i)) = lines.real(tokens[static_cast<std::size_t>(j)]);
  }
  std::vector<Simplex> top;
  for (std::size_t i = 0; i < f; ++i) {
    lines.require(tokens, "a face line");
    const std::size_t m = lines.count(tokens[0], "face size");
    if (m < 3 || tokens.size() < m + 1) lines.fail("face needs at least 3 vertex ids");
    std::vector<VertexId> ids;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t id = lines.count(tokens[j], "vertex id");
      if (id >= v) lines.fail("vertex id " + tokens[j] + " out of range");
      ids.push_back(static_cast<VertexId>(id));
    }
    for (std::size_t j = 1; j + 1 < m; ++j) {
      Simplex s{ids[0], ids[j], ids[j + 1]};
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) lines.fail("repeated vertex in face");
      top.push_back(std::move(s));
    }
  }
  return EmbeddedComplex(SimplicialComplex::build(top, v, f > 0 ? 2 : -1), std::move(x));
}

void write_scx(std::ostream& out, const SimplicialComplex& complex) {
  out << "scx " << complex.dimension() << ' ' << complex.vertex_count() << '\n';
  for (SimplexId id : complex.maximal_simplices()) {
    const Simplex& s = complex.simplex(id);
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << '\n';
  }
}

void write_emb(std::ostream& out, const EmbeddedComplex& embedding) {
  write_scx(out, embedding.complex());
  out << "n " << embedding.ambient_dim() << '\n';
  const auto& x = embedding.coords();
  for (Eigen::Index v = 0; v < x.cols(); ++v) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) out << (i ? " " : "") << format_double(x(i, v));
    out << '\n';
  }
}

std::string to_scx(const SimplicialComplex& complex) {
  std::ostringstream out;
  write_scx(out, complex);
  return out.str();
}

std::string to_emb(const EmbeddedComplex& embedding) {
  std::ostringstream out;
  write_emb(out, embedding);
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

SimplicialComplex read_scx_file(const std::string& path) {
  std::istringstream in(read_text_file(path));
  return parse_scx(in, path);
}

EmbeddedComplex read_emb_file(const std::string& path) {
  std::istringstream in(read_text_file(path));
  return parse_emb(in, path);
}

EmbeddedComplex read_mesh_file(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream probe(text);
  std::string first;
  probe >> first;
  const bool off = first == "OFF" || (path.size() >= 4 && path.compare(path.size() - 4, 4, ".off") == 0);
  std::istringstream in(text);
  return off ? parse_off(in, path) : parse_emb(in, path);
}

}  // namespace thick
