#include "absconic/calibrate.hpp"
#include "absconic/io.hpp"
#include "absconic/scene.hpp"
#include "plot.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace absconic;
using io::Json;

namespace {

enum Exit : int {
    kOk = 0,
    kNoMatch = 1,
    kParse = 2,
    kPrecondition = 3,
    kAlgorithm = 4,
    kInternal = 5,
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::vector<Rat> rats(const std::string& s, std::size_t n, const char* what)
{
    std::vector<Rat> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_rat(part));
    if (out.size() != n) throw ParseError(std::string(what) + ": expected " + std::to_string(n) + " comma-separated values");
    return out;
}

QVector gauss_vector(const std::string& s, std::size_t n, const char* what)
{
    QVector out;
    for (const auto& part : split(s, ',')) out.push_back(parse_gauss(part));
    if (out.size() != n) throw ParseError(std::string(what) + ": expected " + std::to_string(n) + " comma-separated values");
    return out;
}

QVector real_vector(const std::vector<Rat>& v)
{
    QVector out;
    for (const auto& x : v) out.push_back(GaussRat(x));
    return out;
}

bool is_file(const std::string& s) { return std::filesystem::is_regular_file(s); }

// "identity", a JSON file ({"matrix": 4x4} or {"rotation", "translation",
// "scale"}) or inline "p,q,r:tx,ty,tz[:s]" (Cayley rotation parameters).
QMatrix parse_pose(const std::string& s)
{
    if (s.empty() || s == "identity") return QMatrix::identity(4);
    if (is_file(s)) {
        const Json j = io::read_json(s);
        if (j.contains("matrix")) return io::matrix_from_json(j.at("matrix"));
        const QVector r = io::vector_from_json(j.at("rotation"));
        const QVector t = io::vector_from_json(j.at("translation"));
        const Rat scale = j.contains("scale") ? io::rat_from_json(j.at("scale")) : Rat(1);
        if (r.size() != 3 || t.size() != 3) throw ParseError("pose: rotation and translation need three entries");
        return similarity_pose(cayley_rotation(r[0].re(), r[1].re(), r[2].re()), t, scale);
    }
    const auto parts = split(s, ':');
    if (parts.size() < 2 || parts.size() > 3) throw ParseError("pose: expected p,q,r:tx,ty,tz[:scale] or a file");
    const auto r = rats(parts[0], 3, "pose rotation");
    const auto t = rats(parts[1], 3, "pose translation");
    return similarity_pose(cayley_rotation(r[0], r[1], r[2]), real_vector(t), parts.size() == 3 ? parse_rat(parts[2]) : Rat(1));
}

// "canonical", a JSON file ({"projection": 3x4} or {"k", "rotation",
// "translation"}) or inline "fx,s,cx,fy,cy:p,q,r:tx,ty,tz".
CameraSpec parse_camera(const std::string& s)
{
    if (s.empty() || s == "canonical") return canonical_camera();
    if (is_file(s)) {
        const Json j = io::read_json(s);
        if (j.contains("projection")) return CameraSpec{io::matrix_from_json(j.at("projection"))};
        const QVector r = io::vector_from_json(j.at("rotation"));
        if (r.size() != 3) throw ParseError("camera: rotation needs three Cayley parameters");
        return calibrated_camera(io::matrix_from_json(j.at("k")), cayley_rotation(r[0].re(), r[1].re(), r[2].re()),
                                 io::vector_from_json(j.at("translation")));
    }
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw ParseError("camera: expected fx,s,cx,fy,cy:p,q,r:tx,ty,tz, \"canonical\" or a file");
    const auto k = rats(parts[0], 5, "camera intrinsics");
    const auto r = rats(parts[1], 3, "camera rotation");
    const auto t = rats(parts[2], 3, "camera translation");
    QMatrix km{{GaussRat(k[0]), GaussRat(k[1]), GaussRat(k[2])},
               {GaussRat(0), GaussRat(k[3]), GaussRat(k[4])},
               {GaussRat(0), GaussRat(0), GaussRat(1)}};
    return calibrated_camera(km, cayley_rotation(r[0], r[1], r[2]), real_vector(t));
}

// A polynomial document, or a text file holding a form in x, y, z.
MPoly read_curve(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return io::poly_from_json(io::read_json(path));
    return parse_poly(text, image_vars());
}

std::array<ProjPoint, 4> read_square(const std::string& path)
{
    Json j = io::read_json(path);
    if (j.is_object()) j = j.at("points");
    if (!j.is_array() || j.size() != 4) throw ParseError(path + ": expected four points");
    return {io::point_from_json(j[0]), io::point_from_json(j[1]), io::point_from_json(j[2]), io::point_from_json(j[3])};
}

struct Run {
    std::string command;
    std::vector<std::string> inputs;
    Json parameters = Json::object();
    std::string out;
    unsigned precision = 0;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    // The result goes to --out or to stdout; the manifest goes next to it
    // (or into it, for directories), or to stderr without --out.
    void emit(const Json& result) const
    {
        if (out.empty()) {
            std::cout << result.dump(2) << "\n";
            manifest({"-"}, "");
        } else {
            io::write_json(out, result);
            manifest({out}, out + ".manifest.json");
        }
    }

    void manifest(const std::vector<std::string>& outputs, const std::string& path) const
    {
        const Json m{{"command", command},
                     {"inputs", inputs},
                     {"parameters", parameters},
                     {"precision_bits", precision},
                     {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
                     {"outputs", outputs}};
        if (path.empty()) {
            std::cerr << "manifest: " << m.dump() << "\n";
        } else {
            io::write_json(path, m);
        }
    }
};

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
}

bool same_dual(const Conic& a, const Conic& b)
{
    const Conic da = a.plane() == Plane::Dual ? a : conic_dual(a);
    const Conic db = b.plane() == Plane::Dual ? b : conic_dual(b);
    return da == db;
}

std::string describe(const Conic& c) { return c.form(image_vars()).to_string(); }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Camera calibration from pictures of tori and other surfaces of revolution"};
    app.require_subcommand(1);
    Run run;
    std::string precision_text;
    app.add_option("--precision", precision_text, "Working precision in bits for numerical solutions (default 128)");

    // synth
    auto* synth = app.add_subcommand("synth", "Synthesize a scene with ground truth");
    synth->require_subcommand(1);
    std::string a_text, b_text, pose_text, camera_text, side_text = "1", plane_text = "z=1";
    auto* synth_torus = synth->add_subcommand("torus", "Torus (x^2+y^2+z^2+a w^2)^2 - b (x^2+y^2) w^2");
    synth_torus->add_option("--a", a_text, "Rational a > 0")->required();
    synth_torus->add_option("--b", b_text, "Rational b > 0")->required();
    synth_torus->add_option("--pose", pose_text, "identity | p,q,r:tx,ty,tz[:scale] | file");
    synth_torus->add_option("--camera", camera_text, "canonical | fx,s,cx,fy,cy:p,q,r:tx,ty,tz | file");
    synth_torus->add_option("--out", run.out, "Bundle directory")->required();
    auto* synth_square = synth->add_subcommand("square", "Square with vertices (0,0),(s,0),(s,s),(0,s) in the plane z=1");
    synth_square->add_option("--plane", plane_text, "Only z=1; move the square with --pose");
    synth_square->add_option("--side", side_text, "Rational side length");
    synth_square->add_option("--pose", pose_text, "identity | p,q,r:tx,ty,tz[:scale] | file");
    synth_square->add_option("--camera", camera_text, "canonical | fx,s,cx,fy,cy:p,q,r:tx,ty,tz | file");
    synth_square->add_option("--out", run.out, "Output file");

    // symfind
    auto* symfind = app.add_subcommand("symfind", "Find the projective reflection of a curve");
    std::string curve_path;
    bool dual_plane = false;
    symfind->add_option("curve", curve_path, "Polynomial document or text form in x, y, z")->required();
    symfind->add_flag("--dual", dual_plane, "The curve lives in the dual plane");
    symfind->add_option("--out", run.out, "Output file");

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "Recover the image of the absolute conic");
    calibrate->require_subcommand(1);
    auto* cal_torus = calibrate->add_subcommand("torus", "Candidates from a torus picture and its dual");
    std::string bundle_dir, dual_path, picture_path, node_text;
    cal_torus->add_option("--bundle", bundle_dir, "Scene bundle directory (uses its picture and dual picture)");
    cal_torus->add_option("--dual", dual_path, "Dual picture");
    cal_torus->add_option("--picture", picture_path, "Picture, searched for nodes when --node is absent");
    cal_torus->add_option("--node", node_text, "Non-real node x,y,z, e.g. 1,i,0");
    cal_torus->add_option("--out", run.out, "Output file");
    auto* cal_squares = calibrate->add_subcommand("squares", "Absolute from three square pictures");
    std::vector<std::string> files;
    cal_squares->add_option("squares", files, "Files with four image points each")->required();
    cal_squares->add_option("--out", run.out, "Output file");
    auto* cal_rev = calibrate->add_subcommand("revolution", "Absolute from three surface-of-revolution pictures");
    cal_rev->add_option("curves", files, "Curve files")->required();
    cal_rev->add_flag("--dual", dual_plane, "The curves live in the dual plane");
    cal_rev->add_option("--out", run.out, "Output file");

    // verify
    auto* verify = app.add_subcommand("verify", "Check candidates against the ground truth");
    std::string candidates_path, truth_path;
    verify->add_option("candidates", candidates_path, "CandidateSet or conic document")->required();
    verify->add_option("truth", truth_path, "Conic document or scene bundle directory")->required();

    // distance
    auto* distance = app.add_subcommand("distance", "Elliptic distance of two image points");
    std::string conic_path, p_text, q_text;
    distance->add_option("--conic", conic_path, "Absolute conic document (default x^2+y^2+z^2)");
    distance->add_option("p", p_text, "Point x,y,z")->required();
    distance->add_option("q", q_text, "Point x,y,z")->required();

    // plot
    auto* plot = app.add_subcommand("plot", "SVG of the real points of a curve");
    std::string window_text = "-2,2,-2,2";
    int resolution = 400;
    plot->add_option("curve", curve_path, "Polynomial document or text form in x, y, z")->required();
    plot->add_option("--window", window_text, "x0,x1,y0,y1 (rationals)");
    plot->add_option("--resolution", resolution, "Grid cells per side");
    plot->add_option("--out", run.out, "SVG file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    for (int k = 0; k < argc; ++k) run.command += (k ? " " : "") + std::string(argv[k]);
    try {
        if (!precision_text.empty()) {
            const Rat p = parse_rat(precision_text);
            if (p <= 0 || p.get_den() != 1 || p > 1000000) throw ParseError("--precision: expected a positive integer");
            run.precision = static_cast<unsigned>(p.get_num().get_ui());
        } else {
            run.precision = default_precision_bits();
        }
        PrecisionScope scope(run.precision);
        SolveOptions options;
        options.precision_bits = run.precision;

        if (*synth_torus) {
            TorusSpec spec{parse_rat(a_text), parse_rat(b_text), parse_pose(pose_text)};
            spec.validate();
            run.parameters = {{"a", a_text}, {"b", b_text}, {"pose", pose_text}, {"camera", camera_text}};
            const SceneBundle b = make_torus_scene(spec, parse_camera(camera_text));
            io::write_scene_bundle(run.out, b);
            std::cerr << "picture of degree " << b.picture.total_degree() << ", dual picture of degree "
                      << b.dual_picture.total_degree() << "\n";
            run.manifest({run.out}, (std::filesystem::path(run.out) / "manifest.json").string());
            return kOk;
        }
        if (*synth_square) {
            if (plane_text != "z=1") throw DomainError("--plane: only z=1 is supported; move the square with --pose");
            run.parameters = {{"side", side_text}, {"pose", pose_text}, {"camera", camera_text}};
            const CameraSpec cam = parse_camera(camera_text);
            const auto pts = square_scene(parse_pose(pose_text), parse_rat(side_text), cam);
            Json arr = Json::array();
            for (const auto& p : pts) arr.push_back(io::to_json(p));
            run.emit(Json{{"points", arr}, {"absolute", io::to_json(ground_truth_absolute(cam).absolute)}});
            return kOk;
        }
        if (*symfind) {
            run.inputs = {curve_path};
            run.parameters = {{"plane", dual_plane ? "dual" : "image"}};
            const Reflection s = find_symmetry(read_curve(curve_path), dual_plane ? Plane::Dual : Plane::Image);
            run.emit(io::to_json(s));
            return kOk;
        }
        if (*cal_torus) {
            MPoly dual, picture(image_vars());
            if (!bundle_dir.empty()) {
                const SceneBundle b = io::read_scene_bundle(bundle_dir);
                dual = b.dual_picture;
                picture = b.picture;
                run.inputs.push_back(bundle_dir);
            }
            if (!dual_path.empty()) {
                dual = read_curve(dual_path);
                run.inputs.push_back(dual_path);
            }
            if (!picture_path.empty()) {
                picture = read_curve(picture_path);
                run.inputs.push_back(picture_path);
            }
            if (dual.is_zero()) throw DomainError("calibrate torus: give --dual or --bundle");
            std::optional<ProjPoint> node;
            if (!node_text.empty()) node = ProjPoint(gauss_vector(node_text, 3, "--node"));
            run.parameters = {{"node", node_text}};
            const CandidateSet out = calibrate_torus(picture, dual, node, options);
            std::cerr << out.candidates.size() << " candidate(s), " << out.rejected.size() << " rejected\n";
            for (const auto& c : out.candidates) {
                if (c.exact) std::cerr << "  absolute: " << describe(c.absolute) << "\n";
            }
            for (const auto& n : out.notes) std::cerr << "  note: " << n << "\n";
            run.emit(io::to_json(out));
            return kOk;
        }
        if (*cal_squares) {
            run.inputs = files;
            std::vector<std::array<ProjPoint, 4>> squares;
            for (const auto& f : files) squares.push_back(read_square(f));
            const Conic c = calibrate_squares(squares);
            std::cerr << "absolute: " << describe(c) << "\n";
            run.emit(io::to_json(c));
            return kOk;
        }
        if (*cal_rev) {
            run.inputs = files;
            run.parameters = {{"plane", dual_plane ? "dual" : "image"}};
            std::vector<Reflection> rs;
            for (const auto& f : files) rs.push_back(find_symmetry(read_curve(f), dual_plane ? Plane::Dual : Plane::Image));
            const Conic c = calibrate_revolution(std::span<const Reflection>(rs));
            std::cerr << "absolute: " << describe(c) << "\n";
            run.emit(io::to_json(c));
            return kOk;
        }
        if (*verify) {
            const Json cj = io::read_json(candidates_path);
            const std::vector<Conic> cands =
                cj.contains("candidates") ? io::candidate_conics(cj) : std::vector<Conic>{io::conic_from_json(cj)};
            Conic truth;
            if (std::filesystem::is_directory(truth_path)) {
                truth = io::read_scene_bundle(truth_path).dual_absolute;
            } else {
                const Json tj = io::read_json(truth_path);
                truth = io::conic_from_json(tj.contains("absolute") ? tj.at("absolute") : tj);
            }
            for (std::size_t k = 0; k < cands.size(); ++k) {
                if (same_dual(cands[k], truth)) {
                    std::cout << "match: candidate " << k + 1 << " of " << cands.size() << "\n";
                    return kOk;
                }
            }
            std::cout << "no match among " << cands.size() << " exact candidate(s)\n";
            return kNoMatch;
        }
        if (*distance) {
            const Conic c = conic_path.empty() ? Conic(QMatrix::identity(3)) : io::conic_from_json(io::read_json(conic_path));
            const Conic primal = c.plane() == Plane::Image ? c : conic_dual(c);
            const Real d = elliptic_distance(ProjPoint(gauss_vector(p_text, 3, "p")), ProjPoint(gauss_vector(q_text, 3, "q")),
                                             primal);
            std::cout << to_decimal(d, static_cast<int>(run.precision * 0.30103)) << "\n";
            return kOk;
        }
        if (*plot) {
            run.inputs = {curve_path};
            const auto w = rats(window_text, 4, "--window");
            run.parameters = {{"window", window_text}, {"resolution", resolution}};
            const auto p = tools::plot_curve(read_curve(curve_path),
                                             {w[0].get_d(), w[1].get_d(), w[2].get_d(), w[3].get_d()}, resolution);
            if (p.segments == 0) std::cerr << "warning: no real points of the curve in the window\n";
            write_text(run.out, p.svg);
            std::cerr << p.segments << " segments\n";
            run.manifest({run.out}, run.out + ".manifest.json");
            return kOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const NotUniquelySolvable& e) {
        std::cerr << e.what() << " (dimension " << e.dimension() << ", count "
                  << e.count() << ")\n";
        return kAlgorithm;
    } catch (const AlgorithmError& e) {
        std::cerr << "algorithm error: " << e.what() << "\n";
        return kAlgorithm;
    } catch (const DomainError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kPrecondition;
    } catch (const DegenerateError& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
