#pragma once

#include <iosfwd>
#include <string>

#include "thick/complex.hpp"
#include "thick/geometry.hpp"

namespace thick {

// SCX:  "scx <k> <V>" then one line of vertex ids per maximal simplex.
// EMB:  an SCX block, then "n <ambient-dim>", then V lines of n coordinates.
// OFF:  "OFF", "<V> <F> <E>", V lines "x y z", F lines "m i_1 .. i_m".
// '#' starts a comment in SCX and EMB. Parse errors carry "<source>:<line>:".

SimplicialComplex parse_scx(std::istream& in, const std::string& source = "<input>");
EmbeddedComplex parse_emb(std::istream& in, const std::string& source = "<input>");
/// Polygonal faces are fanned into triangles from their first vertex.
EmbeddedComplex parse_off(std::istream& in, const std::string& source = "<input>");

/// Writes the maximal simplices, including isolated vertices.
void write_scx(std::ostream& out, const SimplicialComplex& complex);
/// Coordinates use 17 significant digits, so parsing restores them exactly.
void write_emb(std::ostream& out, const EmbeddedComplex& embedding);

std::string to_scx(const SimplicialComplex& complex);
std::string to_emb(const EmbeddedComplex& embedding);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

SimplicialComplex read_scx_file(const std::string& path);
EmbeddedComplex read_emb_file(const std::string& path);
/// OFF when the extension is .off or the first token is "OFF", EMB otherwise.
EmbeddedComplex read_mesh_file(const std::string& path);

}  // namespace thick
