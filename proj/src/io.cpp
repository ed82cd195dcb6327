#include "hsynth/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "hsynth/error.hpp"

namespace hsynth {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

// Keeps the dotted path of the field being read for error messages.
class Cursor {
public:
    Cursor(YAML::Node node, std::string path, int fallback_line = 0)
        : node_(std::move(node)), path_(std::move(path)), fallback_line_(fallback_line) {}

    [[noreturn]] void fail(const std::string& what) const {
        const int l = node_.IsDefined() ? line_of(node_) : fallback_line_;
        throw ParseError(l, path_, what);
    }

    int line() const { return node_.IsDefined() ? line_of(node_) : fallback_line_; }
    bool present() const { return node_.IsDefined() && !node_.IsNull(); }
    const YAML::Node& node() const { return node_; }
    const std::string& path() const { return path_; }

    Cursor child(const std::string& key) const {
        if (!node_.IsMap()) fail("expected a mapping");
        return {node_[key], path_.empty() ? key : path_ + "." + key, line()};
    }

    Cursor item(std::size_t i) const { return {node_[i], path_ + "[" + std::to_string(i) + "]", line()}; }

    void require_map(const std::set<std::string>& allowed) const {
        if (!node_.IsMap()) fail("expected a mapping");
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!allowed.count(key))
                throw ParseError(line_of(kv.first), path_.empty() ? key : path_ + "." + key, "unknown field");
        }
    }

    double as_double() const {
        if (!present()) fail("missing required value");
        try {
            return node_.as<double>();
        } catch (const YAML::Exception&) {
            fail("expected a number");
        }
    }

    long long as_int() const {
        if (!present()) fail("missing required value");
        try {
            return node_.as<long long>();
        } catch (const YAML::Exception&) {
            fail("expected an integer");
        }
    }

    std::string as_string() const {
        if (!present() || !node_.IsScalar()) fail("expected a string");
        return node_.as<std::string>();
    }

    bool is_auto() const { return node_.IsScalar() && node_.as<std::string>() == "auto"; }

    PointXd as_point(int dim) const {
        if (!node_.IsSequence()) fail("expected a coordinate list");
        if (static_cast<int>(node_.size()) != dim) fail("expected " + std::to_string(dim) + " coordinates");
        PointXd p(dim);
        for (int i = 0; i < dim; ++i) p(i) = item(i).as_double();
        return p;
    }

private:
    YAML::Node node_;
    std::string path_;
    int fallback_line_;
};

HarmonicField<double> read_field(const Cursor& c, int dim) {
    if (!c.present()) return HarmonicField<double>::zero(dim);
    const auto type = c.child("type").as_string();
    try {
        if (type == "zero") {
            c.require_map({"type"});
            return HarmonicField<double>::zero(dim);
        }
        if (type == "constant") {
            c.require_map({"type", "value"});
            return HarmonicField<double>::constant(dim, c.child("value").as_double());
        }
        if (type == "log_source") {
            c.require_map({"type", "source"});
            if (dim != 2) c.fail("log_source is only defined in 2D");
            return HarmonicField<double>::log_source(c.child("source").as_point(dim));
        }
        if (type == "point_source") {
            c.require_map({"type", "source"});
            if (dim != 3) c.fail("point_source is only defined in 3D");
            return HarmonicField<double>::point_source(c.child("source").as_point(dim));
        }
        if (type == "dipole") {
            c.require_map({"type", "source", "direction"});
            return HarmonicField<double>::dipole(c.child("source").as_point(dim), c.child("direction").as_point(dim));
        }
        if (type == "harmonic_polynomial") {
            c.require_map({"type", "terms"});
            const auto terms = c.child("terms");
            if (!terms.node().IsSequence()) terms.fail("expected a list of terms");
            std::vector<Monomial<double>> out;
            for (std::size_t i = 0; i < terms.node().size(); ++i) {
                const auto t = terms.item(i);
                t.require_map({"coefficient", "exponents"});
                const auto e = t.child("exponents");
                if (!e.node().IsSequence() || static_cast<int>(e.node().size()) != dim)
                    e.fail("expected " + std::to_string(dim) + " exponents");
                Monomial<double> m{t.child("coefficient").as_double(), {0, 0, 0}};
                for (int a = 0; a < dim; ++a) m.exponents[a] = static_cast<int>(e.item(a).as_int());
                out.push_back(m);
            }
            return HarmonicField<double>::harmonic_polynomial(dim, std::move(out));
        }
    } catch (const InvalidArgument& e) {
        c.fail(e.what());
    }
    c.child("type").fail("unknown field type '" + type + "'");
}

NodeCount read_nodes(const Cursor& c, int dim, NodeCount fallback) {
    if (!c.present()) return fallback;
    if (dim == 2) {
        if (!c.node().IsScalar()) c.fail("expected a single node count for a circle");
        return {static_cast<int>(c.as_int()), 0};
    }
    if (!c.node().IsSequence() || c.node().size() != 2) c.fail("expected [n_polar, n_azimuth] for a sphere");
    return {static_cast<int>(c.item(0).as_int()), static_cast<int>(c.item(1).as_int())};
}

void emit_point(YAML::Emitter& out, const PointXd& p) {
    out << YAML::Flow << YAML::BeginSeq;
    for (Eigen::Index i = 0; i < p.size(); ++i) out << p(i);
    out << YAML::EndSeq;
}

void emit_field(YAML::Emitter& out, const HarmonicField<double>& f) {
    out << YAML::BeginMap << YAML::Key << "type" << YAML::Value << f.kind();
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, field::Constant<double>>) {
                out << YAML::Key << "value" << YAML::Value << g.value;
            } else if constexpr (std::is_same_v<T, field::LogSource<double>> || std::is_same_v<T, field::PointSource<double>>) {
                out << YAML::Key << "source" << YAML::Value;
                emit_point(out, g.source);
            } else if constexpr (std::is_same_v<T, field::Dipole<double>>) {
                out << YAML::Key << "source" << YAML::Value;
                emit_point(out, g.source);
                out << YAML::Key << "direction" << YAML::Value;
                emit_point(out, g.direction);
            } else if constexpr (std::is_same_v<T, field::HarmonicPolynomial<double>>) {
                out << YAML::Key << "terms" << YAML::Value << YAML::BeginSeq;
                for (const auto& t : g.terms) {
                    out << YAML::Flow << YAML::BeginMap << YAML::Key << "coefficient" << YAML::Value << t.coefficient
                        << YAML::Key << "exponents" << YAML::Value << YAML::Flow << YAML::BeginSeq;
                    for (int a = 0; a < f.dim(); ++a) out << t.exponents[a];
                    out << YAML::EndSeq << YAML::EndMap;
                }
                out << YAML::EndSeq;
            }
        },
        f.variant());
    out << YAML::EndMap;
}

void emit_nodes(YAML::Emitter& out, const NodeCount& n, int dim) {
    if (dim == 2) {
        out << n.primary;
    } else {
        out << YAML::Flow << YAML::BeginSeq << n.primary << n.azimuth << YAML::EndSeq;
    }
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream f(path, mode);
    if (!f) throw Error("io", "cannot open '" + path + "' for writing");
    return f;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ParseError(e.mark.line >= 0 ? e.mark.line + 1 : 0, "", e.msg);
    }
    const Cursor top(root, "", 1);
    if (!root.IsMap()) top.fail("scenario document must be a mapping");
    top.require_map({"format-version", "dim", "antenna", "control-nodes", "epsilon", "seed", "outer", "regions"});

    if (const auto fv = top.child("format-version"); fv.present() && fv.as_int() != 1) fv.fail("unsupported format version");

    Scenario s;
    const auto dim = top.child("dim");
    s.dim = static_cast<int>(dim.as_int());
    if (s.dim != 2 && s.dim != 3) dim.fail("dim must be 2 or 3");
    const auto defaults = default_discretization(s.dim);

    const auto antenna = top.child("antenna");
    antenna.require_map({"radius", "nodes"});
    s.delta = antenna.child("radius").as_double();
    s.discretization.antenna = read_nodes(antenna.child("nodes"), s.dim, defaults.antenna);
    s.discretization.control = read_nodes(top.child("control-nodes"), s.dim, defaults.control);

    if (const auto eps = top.child("epsilon"); !eps.present() || (eps.node().IsScalar() && eps.node().as<std::string>() == "paper")) {
        s.epsilon = EpsilonSpec::paper();
    } else {
        s.epsilon = EpsilonSpec::explicit_value(eps.as_double());
    }
    if (const auto seed = top.child("seed"); seed.present()) {
        const auto v = seed.as_int();
        if (v < 0) seed.fail("seed must be nonnegative");
        s.seed = static_cast<std::uint64_t>(v);
    }

    const auto outer = top.child("outer");
    outer.require_map({"radius", "control-radius", "field"});
    s.outer_radius = outer.child("radius").as_double();
    s.exterior_field = read_field(outer.child("field"), s.dim);

    const auto regions = top.child("regions");
    if (!regions.node().IsSequence() || regions.node().size() == 0) regions.fail("expected a nonempty list of regions");
    for (std::size_t k = 0; k < regions.node().size(); ++k) {
        const auto r = regions.item(k);
        r.require_map({"center", "radius", "control-radius", "field"});
        Region reg;
        reg.center = r.child("center").as_point(s.dim);
        reg.radius = r.child("radius").as_double();
        reg.field = read_field(r.child("field"), s.dim);
        const auto cr = r.child("control-radius");
        reg.control_radius = !cr.present() || cr.is_auto() ? default_control_radius(reg.center, reg.radius, s.delta, s.outer_radius)
                                                           : cr.as_double();
        s.regions.push_back(std::move(reg));
    }
    const auto ocr = outer.child("control-radius");
    s.outer_control_radius = !ocr.present() || ocr.is_auto() ? default_outer_control_radius(s.regions, s.outer_radius) : ocr.as_double();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError(0, "", "cannot read scenario file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

std::string scenario_to_yaml(const Scenario& s) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "format-version" << YAML::Value << 1;
    out << YAML::Key << "dim" << YAML::Value << s.dim;
    out << YAML::Key << "antenna" << YAML::Value << YAML::BeginMap << YAML::Key << "radius" << YAML::Value << s.delta
        << YAML::Key << "nodes" << YAML::Value;
    emit_nodes(out, s.discretization.antenna, s.dim);
    out << YAML::EndMap;
    out << YAML::Key << "control-nodes" << YAML::Value;
    emit_nodes(out, s.discretization.control, s.dim);
    out << YAML::Key << "epsilon" << YAML::Value;
    if (s.epsilon.kind == EpsilonSpec::Kind::paper) out << "paper";
    else out << s.epsilon.value;
    out << YAML::Key << "seed" << YAML::Value << s.seed;
    out << YAML::Key << "outer" << YAML::Value << YAML::BeginMap << YAML::Key << "radius" << YAML::Value << s.outer_radius
        << YAML::Key << "control-radius" << YAML::Value << s.outer_control_radius << YAML::Key << "field" << YAML::Value;
    emit_field(out, s.exterior_field);
    out << YAML::EndMap;
    out << YAML::Key << "regions" << YAML::Value << YAML::BeginSeq;
    for (const auto& r : s.regions) {
        out << YAML::BeginMap << YAML::Key << "center" << YAML::Value;
        emit_point(out, r.center);
        out << YAML::Key << "radius" << YAML::Value << r.radius << YAML::Key << "control-radius" << YAML::Value << r.control_radius
            << YAML::Key << "field" << YAML::Value;
        emit_field(out, r.field);
        out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

void write_field_grid(const std::string& path, const FieldGrid& grid) {
    auto f = open_out(path);
    f << kFormatVersionLine << "\n";
    static const char* axes[] = {"x", "y", "z"};
    for (Eigen::Index a = 0; a < grid.points.rows(); ++a) f << axes[a] << ",";
    f << "total,target,mismatch,label\n";
    f << std::setprecision(17);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        for (Eigen::Index a = 0; a < grid.points.rows(); ++a) f << grid.points(a, i) << ",";
        f << grid.total(i) << "," << grid.target(i) << "," << grid.mismatch(i) << "," << grid.labels[i].name() << "\n";
    }
    if (!f) throw Error("io", "failed writing '" + path + "'");
}

void write_spectrum(const std::string& path, const WeightedSvd<double>& svd) {
    auto f = open_out(path);
    f << kFormatVersionLine << "\nindex,sigma\n" << std::setprecision(17);
    for (Eigen::Index i = 0; i < svd.singular_values.size(); ++i) f << i + 1 << "," << svd.singular_values(i) << "\n";
    if (!f) throw Error("io", "failed writing '" + path + "'");
}

void write_table(const std::string& path, const std::string& parameter_name, const std::vector<TableRow>& rows) {
    auto f = open_out(path);
    f << kFormatVersionLine << "\n" << parameter_name << ",discrepancy,energy\n" << std::setprecision(17);
    for (const auto& r : rows) f << r.parameter << "," << r.discrepancy << "," << r.energy << "\n";
    if (!f) throw Error("io", "failed writing '" + path + "'");
}

namespace {
constexpr char kDumpMagic[8] = {'H', 'S', 'K', 'O', 'P', '0', '0', '1'};
}

void write_operator_dump(const std::string& path, const ForwardOperator<double>& K) {
    auto f = open_out(path, std::ios::out | std::ios::binary);
    const auto& sigma = K.spectrum().singular_values;
    const std::uint64_t header[3] = {static_cast<std::uint64_t>(K.rows()), static_cast<std::uint64_t>(K.cols()),
                                     static_cast<std::uint64_t>(sigma.size())};
    f.write(kDumpMagic, sizeof kDumpMagic);
    f.write(reinterpret_cast<const char*>(header), sizeof header);
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = K.matrix();
    f.write(reinterpret_cast<const char*>(rm.data()), static_cast<std::streamsize>(rm.size() * sizeof(double)));
    f.write(reinterpret_cast<const char*>(sigma.data()), static_cast<std::streamsize>(sigma.size() * sizeof(double)));
    if (!f) throw Error("io", "failed writing '" + path + "'");
}

OperatorDump read_operator_dump(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("io", "cannot read '" + path + "'");
    char magic[8];
    std::uint64_t header[3];
    f.read(magic, sizeof magic);
    f.read(reinterpret_cast<char*>(header), sizeof header);
    if (!f || std::memcmp(magic, kDumpMagic, sizeof magic) != 0) throw Error("io", "'" + path + "' is not an operator dump");
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(header[0], header[1]);
    OperatorDump d;
    d.singular_values.resize(static_cast<Eigen::Index>(header[2]));
    f.read(reinterpret_cast<char*>(rm.data()), static_cast<std::streamsize>(rm.size() * sizeof(double)));
    f.read(reinterpret_cast<char*>(d.singular_values.data()),
           static_cast<std::streamsize>(d.singular_values.size() * sizeof(double)));
    if (!f) throw Error("io", "truncated operator dump '" + path + "'");
    d.matrix = rm;
    return d;
}

}  // namespace hsynth
