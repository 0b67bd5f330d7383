#include "shellframe/fieldfile.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "shellframe/errors.hpp"

namespace shellframe {

namespace {

constexpr const char* kMagic = "shellframe-field 1";

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

int components_per_point(FieldRank rank) {
    switch (rank) {
        case FieldRank::scalar: return 1;
        case FieldRank::vector2: return 2;
        case FieldRank::tensor2sym: return 3;
        case FieldRank::tensor2: return 4;
    }
    throw io_error("unknown field rank");
}

std::string to_string(FieldRank rank) {
    switch (rank) {
        case FieldRank::scalar: return "scalar";
        case FieldRank::vector2: return "vector2";
        case FieldRank::tensor2sym: return "tensor2sym";
        case FieldRank::tensor2: return "tensor2";
    }
    throw io_error("unknown field rank");
}

FieldRank field_rank_from_string(const std::string& name) {
    if (name == "scalar") return FieldRank::scalar;
    if (name == "vector2") return FieldRank::vector2;
    if (name == "tensor2sym") return FieldRank::tensor2sym;
    if (name == "tensor2") return FieldRank::tensor2;
    throw io_error("unknown field rank: " + name);
}

FieldData make_field_data(const std::string& name, const ScalarField& f) {
    return {name, FieldRank::scalar, f.grid, f.v};
}
FieldData make_field_data(const std::string& name, const VectorField2& f) {
    return {name, FieldRank::vector2, f.grid, f.v};
}
FieldData make_field_data(const std::string& name, const SymTensor2Field& f) {
    return {name, FieldRank::tensor2sym, f.grid, f.v};
}
FieldData make_field_data(const std::string& name, const Tensor2Field& f) {
    return {name, FieldRank::tensor2, f.grid, f.v};
}

namespace {

void require_rank(const FieldData& data, FieldRank rank) {
    if (data.rank != rank)
        throw io_error("field '" + data.name + "': expected rank " + to_string(rank) +
                       ", got " + to_string(data.rank));
}

} // namespace

ScalarField to_scalar_field(const FieldData& data) {
    require_rank(data, FieldRank::scalar);
    ScalarField f(data.grid);
    f.v = data.values;
    return f;
}
VectorField2 to_vector_field(const FieldData& data) {
    require_rank(data, FieldRank::vector2);
    VectorField2 f(data.grid);
    f.v = data.values;
    return f;
}
SymTensor2Field to_sym_tensor_field(const FieldData& data) {
    require_rank(data, FieldRank::tensor2sym);
    SymTensor2Field f(data.grid);
    f.v = data.values;
    return f;
}
Tensor2Field to_tensor_field(const FieldData& data) {
    require_rank(data, FieldRank::tensor2);
    Tensor2Field f(data.grid);
    f.v = data.values;
    return f;
}

void write_field(std::ostream& out, const FieldData& data) {
    const Grid& g = data.grid;
    int ncomp = components_per_point(data.rank);
    if (static_cast<int>(data.values.size()) != ncomp * g.size())
        throw io_error("field '" + data.name + "': record count mismatch");
    double a1max = g.a1min + g.d1 * (g.p1 ? g.n1 : g.n1 - 1);
    double a2max = g.a2min + g.d2 * (g.p2 ? g.n2 : g.n2 - 1);
    out << kMagic << "\n";
    out << "name " << data.name << "\n";
    out << "rank " << to_string(data.rank) << "\n";
    out << "dims " << g.n1 << " " << g.n2 << "\n";
    out << "domain " << fmt(g.a1min) << " " << fmt(a1max) << " " << fmt(g.a2min) << " "
        << fmt(a2max) << "\n";
    out << "spacing " << fmt(g.d1) << " " << fmt(g.d2) << "\n";
    out << "periodic " << (g.p1 ? 1 : 0) << " " << (g.p2 ? 1 : 0) << "\n";
    out << "data\n";
    for (int k = 0; k < g.size(); ++k) {
        for (int c = 0; c < ncomp; ++c)
            out << (c ? " " : "") << fmt(data.values[k * ncomp + c]);
        out << "\n";
    }
    if (!out) throw io_error("field '" + data.name + "': write failed");
}

void write_field(const std::string& path, const FieldData& data) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    write_field(out, data);
}

FieldData read_field(std::istream& in) {
    std::string line;
    auto next_line = [&](const char* what) {
        if (!std::getline(in, line)) throw io_error(std::string("field file: missing ") + what);
        return line;
    };
    if (next_line("magic") != kMagic) throw io_error("field file: bad magic line '" + line + "'");

    FieldData data;
    int n1 = 0, n2 = 0, p1 = 0, p2 = 0;
    Domain dom;
    double d1 = 0.0, d2 = 0.0;
    auto expect = [&](std::istringstream& s, const std::string& key) {
        std::string k;
        s >> k;
        if (k != key) throw io_error("field file: expected '" + key + "', got '" + k + "'");
    };
    { std::istringstream s(next_line("name")); expect(s, "name"); s >> data.name; }
    {
        std::istringstream s(next_line("rank"));
        expect(s, "rank");
        std::string r;
        s >> r;
        data.rank = field_rank_from_string(r);
    }
    { std::istringstream s(next_line("dims")); expect(s, "dims"); s >> n1 >> n2; }
    {
        std::istringstream s(next_line("domain"));
        expect(s, "domain");
        s >> dom.a1min >> dom.a1max >> dom.a2min >> dom.a2max;
    }
    { std::istringstream s(next_line("spacing")); expect(s, "spacing"); s >> d1 >> d2; }
    { std::istringstream s(next_line("periodic")); expect(s, "periodic"); s >> p1 >> p2; }
    if (next_line("data marker") != "data") throw io_error("field file: missing 'data' marker");

    try {
        data.grid = Grid(n1, n2, dom, p1 != 0, p2 != 0);
    } catch (const validation_error& e) {
        throw io_error(std::string("field file: ") + e.what());
    }
    // Stored spacing is authoritative: it round-trips bit-exact where the
    // extent division may not.
    data.grid.d1 = d1;
    data.grid.d2 = d2;

    int ncomp = components_per_point(data.rank);
    size_t expected = static_cast<size_t>(ncomp) * data.grid.size();
    data.values.reserve(expected);
    double v;
    while (in >> v) data.values.push_back(v);
    if (data.values.size() != expected)
        throw io_error("field file '" + data.name + "': expected " +
                       std::to_string(expected) + " records, got " +
                       std::to_string(data.values.size()));
    return data;
}

FieldData read_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    return read_field(in);
}

} // namespace shellframe
