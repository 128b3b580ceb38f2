// SPDX-License-Identifier: Apache-2.0

#include "yeefem/export.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "yeefem/errors.hpp"
#include "yeefem/format.hpp"

namespace yeefem
{

namespace
{

struct CellData
{
  Vec2 centroid;
  Vec2 e;
  double abs;
  double curl;
};

CellData cell(const Mesh &m, int t, const DofVector &field)
{
  constexpr double third = 1.0 / 3.0;
  CellData c;
  c.centroid = m.centroid(t);
  c.e = element_value(m, t, field.coeffs, {third, third, third});
  c.abs = std::hypot(c.e[0], c.e[1]);
  c.curl = element_curl(m, t, field.coeffs);
  return c;
}

void check_field(const Mesh &m, const DofVector &field)
{
  if (field.space != Space::Full || static_cast<int>(field.size()) != 2 * m.num_edges())
  {
    throw ContractError("export expects a full-space field on the given mesh");
  }
}

}  // namespace

ExportFormat parse_export_format(std::string_view s)
{
  if (s == "csv")
  {
    return ExportFormat::Csv;
  }
  if (s == "vtk" || s == "vtk-legacy")
  {
    return ExportFormat::VtkLegacy;
  }
  throw ConfigError("unknown export format '" + std::string(s) + "'");
}

void write_field_csv(std::ostream &os, const Mesh &m, const DofVector &field)
{
  check_field(m, field);
  os << "cx,cy,Ex,Ey,|E|,curlE\n";
  for (int t = 0; t < m.num_triangles(); t++)
  {
    const CellData c = cell(m, t, field);
    os << format_double(c.centroid[0]) << ',' << format_double(c.centroid[1]) << ','
       << format_double(c.e[0]) << ',' << format_double(c.e[1]) << ',' << format_double(c.abs)
       << ',' << format_double(c.curl) << '\n';
  }
}

void write_field_vtk(std::ostream &os, const Mesh &m, const DofVector &field)
{
  check_field(m, field);
  const int nt = m.num_triangles();
  os << "# vtk DataFile Version 3.0\n"
     << "edge element field\n"
     << "ASCII\n"
     << "DATASET UNSTRUCTURED_GRID\n"
     << "POINTS " << m.num_vertices() << " double\n";
  for (const auto &v : m.vertices())
  {
    os << format_double(v[0]) << ' ' << format_double(v[1]) << " 0\n";
  }
  os << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto &tri : m.triangles())
  {
    os << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  }
  os << "CELL_TYPES " << nt << '\n';
  for (int t = 0; t < nt; t++)
  {
    os << "5\n";
  }
  std::vector<CellData> cells;
  cells.reserve(nt);
  for (int t = 0; t < nt; t++)
  {
    cells.push_back(cell(m, t, field));
  }
  os << "CELL_DATA " << nt << '\n' << "VECTORS E double\n";
  for (const auto &c : cells)
  {
    os << format_double(c.e[0]) << ' ' << format_double(c.e[1]) << " 0\n";
  }
  os << "SCALARS absE double 1\nLOOKUP_TABLE default\n";
  for (const auto &c : cells)
  {
    os << format_double(c.abs) << '\n';
  }
  os << "SCALARS curlE double 1\nLOOKUP_TABLE default\n";
  for (const auto &c : cells)
  {
    os << format_double(c.curl) << '\n';
  }
}

void export_snapshot(std::ostream &os, const SolutionRecord &rec, double t, ExportFormat format)
{
  if (!rec.mesh)
  {
    throw ContractError("record has no mesh");
  }
  const Snapshot &s = rec.snapshot_at(t);
  if (format == ExportFormat::Csv)
  {
    write_field_csv(os, *rec.mesh, s.field);
  }
  else
  {
    write_field_vtk(os, *rec.mesh, s.field);
  }
}

void export_snapshot_file(const std::string &path, const SolutionRecord &rec, double t,
                          ExportFormat format)
{
  std::ofstream os(path);
  if (!os)
  {
    throw ConfigError("cannot open '" + path + "' for writing");
  }
  export_snapshot(os, rec, t, format);
}

}  // namespace yeefem
