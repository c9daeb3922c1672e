#include "absconic/io.hpp"

#include "absconic/error.hpp"

#include <fstream>
#include <sstream>

namespace absconic::io {

namespace {

const char* plane_name(Plane p) { return p == Plane::Image ? "image" : "dual"; }

Plane plane_from_json(const Json& j)
{
    if (!j.contains("plane")) return Plane::Image;
    const std::string s = j.at("plane").get<std::string>();
    if (s == "image") return Plane::Image;
    if (s == "dual") return Plane::Dual;
    throw ParseError("plane must be \"image\" or \"dual\", got \"" + s + "\"");
}

// Field access with ParseError instead of the json library's exceptions.
const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

const Json& array_of(const Json& j, const char* what)
{
    if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
    return j;
}

Json complex_json(const Complex& z)
{
    return Json::array({to_decimal(z.re, 40), to_decimal(z.im, 40)});
}

Json pair_json(const std::pair<ProjPoint, ProjPoint>& p) { return Json::array({to_json(p.first), to_json(p.second)}); }

}  // namespace

Json to_json(const GaussRat& z)
{
    if (z.is_real()) return to_string(z.re());
    return Json{{"re", to_string(z.re())}, {"im", to_string(z.im())}};
}

Rat rat_from_json(const Json& j)
{
    if (j.is_number()) throw ParseError("number " + j.dump() + " rejected; write exact values as strings like \"3/4\"");
    if (!j.is_string()) throw ParseError("expected a rational string, got " + j.dump());
    return parse_rat(j.get<std::string>());
}

GaussRat gauss_from_json(const Json& j)
{
    if (j.is_object()) {
        return GaussRat(rat_from_json(field(j, "re")), j.contains("im") ? rat_from_json(j.at("im")) : Rat(0));
    }
    if (j.is_number()) throw ParseError("number " + j.dump() + " rejected; write exact values as strings like \"3/4\"");
    if (!j.is_string()) throw ParseError("expected a number string, got " + j.dump());
    return parse_gauss(j.get<std::string>());
}

Json to_json(const MPoly& f)
{
    Json terms = Json::array();
    for (const auto& [m, c] : f.terms()) {
        Json e = Json::array();
        for (std::size_t k = 0; k < f.nvars(); ++k) e.push_back(m.e[k]);
        terms.push_back(Json::array({to_json(c), e}));
    }
    return Json{{"vars", *f.vars()}, {"terms", terms}};
}

MPoly poly_from_json(const Json& j)
{
    VarList names;
    for (const auto& v : array_of(field(j, "vars"), "vars")) {
        if (!v.is_string()) throw ParseError("variable names must be strings");
        names.push_back(v.get<std::string>());
    }
    const Vars vars = make_vars(names);
    if (j.contains("expr")) return parse_poly(j.at("expr").get<std::string>(), vars);
    std::vector<MPoly::Term> terms;
    for (const auto& t : array_of(field(j, "terms"), "terms")) {
        if (!t.is_array() || t.size() != 2 || !t[1].is_array() || t[1].size() != names.size()) {
            throw ParseError("term must be [coefficient, [" + std::to_string(names.size()) + " exponents]]");
        }
        Monomial m;
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (!t[1][k].is_number_unsigned()) throw ParseError("exponents must be non-negative integers");
            const auto e = t[1][k].get<std::uint64_t>();
            if (e > 0xffff) throw ParseError("exponent too large");
            m.e[k] = static_cast<std::uint16_t>(e);
        }
        terms.emplace_back(m, gauss_from_json(t[0]));
    }
    return MPoly::from_terms(vars, std::move(terms));
}

Json to_json(const QVector& v)
{
    Json out = Json::array();
    for (const auto& c : v) out.push_back(to_json(c));
    return out;
}

QVector vector_from_json(const Json& j)
{
    QVector v;
    for (const auto& c : array_of(j, "vector")) v.push_back(gauss_from_json(c));
    return v;
}

Json to_json(const QMatrix& m)
{
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        out.push_back(row);
    }
    return out;
}

QMatrix matrix_from_json(const Json& j)
{
    const Json& rows = array_of(j.is_object() ? field(j, "matrix") : j, "matrix");
    if (rows.empty()) throw ParseError("matrix: no rows");
    const std::size_t cols = array_of(rows[0], "matrix row").size();
    QMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (array_of(rows[r], "matrix row").size() != cols) throw ParseError("matrix: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = gauss_from_json(rows[r][c]);
    }
    return m;
}

Json to_json(const ProjPoint& p) { return to_json(p.coords()); }

ProjPoint point_from_json(const Json& j)
{
    QVector v = vector_from_json(j);
    if (v.size() != 3) throw ParseError("point: expected three coordinates");
    return ProjPoint(v);
}

Json to_json(const Conic& c)
{
    return Json{{"plane", plane_name(c.plane())}, {"matrix", to_json(c.matrix())}, {"form", to_json(c.form(image_vars()))}};
}

Conic conic_from_json(const Json& j)
{
    const Plane plane = plane_from_json(j);
    if (j.contains("matrix")) return Conic(matrix_from_json(j.at("matrix")), plane);
    if (j.contains("form")) return Conic::from_form(poly_from_json(j.at("form")), plane);
    // A bare polynomial document.
    return Conic::from_form(poly_from_json(j), plane);
}

Json to_json(const Reflection& s)
{
    return Json{{"plane", plane_name(s.plane)}, {"matrix", to_json(s.map.matrix())}};
}

Json to_json(const Candidate& c)
{
    Json out{{"exact", c.exact}};
    if (c.exact) {
        out["dual_absolute"] = to_json(c.dual_absolute);
        out["absolute"] = to_json(c.absolute);
        out["hessian"] = to_json(c.hessian);
    } else {
        Json num = Json::array();
        for (const auto& z : c.numeric) num.push_back(complex_json(z));
        out["numeric"] = num;
        out["radius"] = to_decimal(c.radius, 6);
    }
    out["real"] = c.real;
    out["definite"] = c.definite;
    out["resultant_square"] = c.resultant_square;
    out["avoids_singular_points"] = c.avoids_singular_points;
    out["nodes"] = pair_json(c.nodes);
    return out;
}

Json to_json(const CandidateSet& s)
{
    Json cands = Json::array(), rejected = Json::array(), pairs = Json::array();
    for (const auto& c : s.candidates) cands.push_back(to_json(c));
    for (const auto& c : s.rejected) rejected.push_back(to_json(c));
    for (const auto& p : s.node_pairs) pairs.push_back(pair_json(p));
    return Json{{"symmetry", to_json(s.symmetry)},
                {"node_pairs", pairs},
                {"candidates", cands},
                {"rejected", rejected},
                {"notes", s.notes}};
}

std::vector<Conic> candidate_conics(const Json& j)
{
    std::vector<Conic> out;
    for (const auto& c : array_of(field(j, "candidates"), "candidates")) {
        if (c.contains("exact") && c.at("exact").get<bool>()) out.push_back(conic_from_json(field(c, "dual_absolute")));
    }
    return out;
}

Json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

void write_scene_bundle(const std::filesystem::path& dir, const SceneBundle& b)
{
    std::filesystem::create_directories(dir);
    write_json(dir / "spec.json", Json{{"a", to_string(b.spec.a)}, {"b", to_string(b.spec.b)}, {"pose", to_json(b.spec.pose)}});
    write_json(dir / "camera.json", Json{{"projection", to_json(b.camera.projection)}});
    write_json(dir / "picture.json", to_json(b.picture));
    write_json(dir / "dual_picture.json", to_json(b.dual_picture));
    write_json(dir / "absolute.json", to_json(b.absolute));
    write_json(dir / "dual_absolute.json", to_json(b.dual_absolute));
    write_json(dir / "nodes.json", pair_json(b.nodes));
}

SceneBundle read_scene_bundle(const std::filesystem::path& dir)
{
    SceneBundle b;
    const Json spec = read_json(dir / "spec.json");
    b.spec = TorusSpec{rat_from_json(field(spec, "a")), rat_from_json(field(spec, "b")), matrix_from_json(field(spec, "pose"))};
    b.camera = CameraSpec{matrix_from_json(field(read_json(dir / "camera.json"), "projection"))};
    b.picture = poly_from_json(read_json(dir / "picture.json"));
    b.dual_picture = poly_from_json(read_json(dir / "dual_picture.json"));
    b.absolute = conic_from_json(read_json(dir / "absolute.json"));
    b.dual_absolute = conic_from_json(read_json(dir / "dual_absolute.json"));
    const Json nodes = read_json(dir / "nodes.json");
    if (!nodes.is_array() || nodes.size() != 2) throw ParseError("nodes.json: expected two points");
    b.nodes = {point_from_json(nodes[0]), point_from_json(nodes[1])};
    return b;
}

}  // namespace absconic::io
