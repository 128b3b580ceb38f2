// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_EXPORT_HPP
#define YEEFEM_EXPORT_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "yeefem/simulation.hpp"

namespace yeefem
{

enum class ExportFormat
{
  Csv,        // cx,cy,Ex,Ey,|E|,curlE per triangle
  VtkLegacy,  // ASCII unstructured grid with cell data
};

ExportFormat parse_export_format(std::string_view s);

// Writes the snapshot nearest to t. Throws LookupError if none was recorded there.
void export_snapshot(std::ostream &os, const SolutionRecord &rec, double t, ExportFormat format);
void export_snapshot_file(const std::string &path, const SolutionRecord &rec, double t,
                          ExportFormat format);

// Same output for a bare full-space field on a mesh.
void write_field_csv(std::ostream &os, const Mesh &m, const DofVector &field);
void write_field_vtk(std::ostream &os, const Mesh &m, const DofVector &field);

}  // namespace yeefem

#endif  // YEEFEM_EXPORT_HPP
