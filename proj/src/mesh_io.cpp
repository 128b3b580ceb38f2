// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "yeefem/errors.hpp"
#include "yeefem/format.hpp"
#include "yeefem/mesh.hpp"

namespace yeefem
{

namespace
{

std::vector<std::string_view> split_ws(std::string_view line)
{
  std::vector<std::string_view> tok;
  std::size_t i = 0;
  while (i < line.size())
  {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
    {
      i++;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
    {
      j++;
    }
    if (j > i)
    {
      tok.push_back(line.substr(i, j - i));
    }
    i = j;
  }
  return tok;
}

template <typename T>
T parse_number(std::string_view s, int line)
{
  T value{};
  const auto *end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end)
  {
    throw ParseError(line, "cannot parse number '" + std::string(s) + "'");
  }
  return value;
}

// Iterates over non-empty, non-comment lines keeping track of line numbers.
class LineReader
{
public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::vector<std::string_view> &tokens)
  {
    while (pos_ <= text_.size())
    {
      const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      line_no_++;
      tokens = split_ws(line);
      if (tokens.empty() || tokens[0].front() == '#')
      {
        continue;
      }
      return true;
    }
    return false;
  }

  int line() const { return line_no_; }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
};

}  // namespace

Mesh parse_mesh(std::string_view text)
{
  LineReader reader(text);
  std::vector<std::string_view> tok;

  auto expect_line = [&](const char *what) {
    if (!reader.next(tok))
    {
      throw ParseError(reader.line(), std::string("unexpected end of file, expected ") + what);
    }
  };

  expect_line("header");
  if (tok.size() != 3 || tok[0] != "meshfmt" || tok[1] != "1" || tok[2] != "2d")
  {
    throw ParseError(reader.line(), "expected header 'meshfmt 1 2d'");
  }

  expect_line("'vertices N'");
  if (tok.size() != 2 || tok[0] != "vertices")
  {
    throw ParseError(reader.line(), "expected 'vertices N'");
  }
  const long nv = parse_number<long>(tok[1], reader.line());
  if (nv < 0)
  {
    throw ParseError(reader.line(), "negative vertex count");
  }
  std::vector<Vec2> vertices;
  vertices.reserve(nv);
  for (long v = 0; v < nv; v++)
  {
    expect_line("vertex coordinates");
    if (tok.size() != 2)
    {
      throw ParseError(reader.line(), "vertex line needs exactly 2 values");
    }
    vertices.push_back(
        {parse_number<double>(tok[0], reader.line()), parse_number<double>(tok[1], reader.line())});
  }

  expect_line("'triangles M'");
  if (tok.size() != 2 || tok[0] != "triangles")
  {
    throw ParseError(reader.line(), "expected 'triangles M'");
  }
  const long nt = parse_number<long>(tok[1], reader.line());
  if (nt < 0)
  {
    throw ParseError(reader.line(), "negative triangle count");
  }
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> labels;
  triangles.reserve(nt);
  labels.reserve(nt);
  for (long t = 0; t < nt; t++)
  {
    expect_line("triangle");
    if (tok.size() != 4)
    {
      throw ParseError(reader.line(), "triangle line needs 'i j k label'");
    }
    const int line = reader.line();
    triangles.push_back({parse_number<int>(tok[0], line), parse_number<int>(tok[1], line),
                         parse_number<int>(tok[2], line)});
    labels.push_back(parse_number<int>(tok[3], line));
  }
  if (reader.next(tok))
  {
    throw ParseError(reader.line(), "trailing content after triangle block");
  }
  return Mesh(std::move(vertices), std::move(triangles), std::move(labels));
}

Mesh read_mesh_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open mesh file '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_mesh(ss.str());
}

void write_mesh(std::ostream &os, const Mesh &m)
{
  os << "meshfmt 1 2d\n";
  os << "vertices " << m.num_vertices() << "\n";
  for (const auto &v : m.vertices())
  {
    os << format_double(v[0]) << ' ' << format_double(v[1]) << '\n';
  }
  os << "triangles " << m.num_triangles() << "\n";
  for (int t = 0; t < m.num_triangles(); t++)
  {
    const auto &tri = m.triangle(t);
    os << tri[0] << ' ' << tri[1] << ' ' << tri[2] << ' ' << m.tri_label()[t] << '\n';
  }
}

void write_mesh_file(const std::string &path, const Mesh &m)
{
  std::ofstream out(path);
  if (!out)
  {
    throw ConfigError("cannot write mesh file '" + path + "'");
  }
  write_mesh(out, m);
}

}  // namespace yeefem
