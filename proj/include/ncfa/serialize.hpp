#pragma once

#include <string>
#include <vector>

#include "ncfa/search.hpp"

namespace ncfa {

/// Doubles are printed with 17 significant digits so that every CSV field
/// round-trips to the identical bit pattern.
std::string format_double(double v);
double parse_double(const std::string& s);

// -- element documents -------------------------------------------------------

/// { "algebra_id": ..., "blocks": [ matrix, ... ] } with each matrix a list
/// of rows of [re, im] pairs.
std::string element_to_json(const Element& x);
/// Resolves the algebra by id against the model's two sides.
Element element_from_json(const ModelPtr& m, const std::string& text);

// -- model configuration -----------------------------------------------------

/// Inline spec "cyclic:6", "abelian:2x2", "s3", "tl:1.5", or a path to a
/// JSON config { kind, n | factors | irrep_table_path | delta }.
ModelPtr model_from_spec(const std::string& spec);
ModelPtr model_from_json(const std::string& text);

std::string irrep_table_to_json(const IrrepTable& t);
IrrepTable irrep_table_from_json(const std::string& text);

// -- CSV ---------------------------------------------------------------------

std::string check_csv_header();
std::string check_csv_row(const CheckReport& r);
CheckReport check_from_csv(const std::string& line);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& r);
SweepRow sweep_from_csv(const std::string& line);

std::string validity_csv_header();
std::string validity_csv_row(const ValidityRow& r);
ValidityRow validity_from_csv(const std::string& line);

std::string classification_csv_header();
std::string classification_csv_row(const Classification& c);
Classification classification_from_csv(const std::string& line);

std::vector<std::string> split_csv_line(const std::string& line);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace ncfa
