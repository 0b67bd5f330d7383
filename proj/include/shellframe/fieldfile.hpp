#pragma once

#include <iosfwd>
#include <string>

#include "shellframe/grid.hpp"

namespace shellframe {

enum class FieldRank { scalar, vector2, tensor2sym, tensor2 };

int components_per_point(FieldRank rank);
std::string to_string(FieldRank rank);
FieldRank field_rank_from_string(const std::string& name);

/// Self-describing grid field: text header plus row-major records, numbers
/// serialized with full round-trip precision (read(write(x)) is bit-exact).
struct FieldData {
    std::string name;
    FieldRank rank = FieldRank::scalar;
    Grid grid;
    std::vector<double> values;
};

FieldData make_field_data(const std::string& name, const ScalarField& f);
FieldData make_field_data(const std::string& name, const VectorField2& f);
FieldData make_field_data(const std::string& name, const SymTensor2Field& f);
FieldData make_field_data(const std::string& name, const Tensor2Field& f);

ScalarField to_scalar_field(const FieldData& data);
VectorField2 to_vector_field(const FieldData& data);
SymTensor2Field to_sym_tensor_field(const FieldData& data);
Tensor2Field to_tensor_field(const FieldData& data);

void write_field(std::ostream& out, const FieldData& data);
void write_field(const std::string& path, const FieldData& data);

/// Throws io_error on malformed input or record-count mismatch.
FieldData read_field(std::istream& in);
FieldData read_field(const std::string& path);

} // namespace shellframe
