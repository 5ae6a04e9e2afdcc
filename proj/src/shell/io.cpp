#include "saet/io.hpp"

#include "saet/errors.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace saet::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

} // namespace

Json to_json(const Q& q) { return to_string(q); }

Json to_json(const Vec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Q q_from(const Json& j) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::exception&) {
            bad("not a rational: " + j.get<std::string>());
        }
    }
    if (j.is_number_integer()) return Q(j.get<long>());
    bad("rational expected, got " + j.dump());
}

Vec vec_from(const Json& j) {
    if (!j.is_array()) bad("array of rationals expected");
    Vec v;
    for (const auto& x : j) v.push_back(q_from(x));
    return v;
}

Json to_json(const Complex& k) {
    Json verts = Json::array();
    for (const auto& p : k.vertices()) verts.push_back(to_json(p));
    return Json{{"vertices", verts}, {"tops", k.top_lists()}};
}

ComplexPtr complex_from(const Json& j) {
    std::vector<Vec> verts;
    for (const auto& p : field(j, "vertices")) verts.push_back(vec_from(p));
    std::vector<VertexList> tops;
    try {
        tops = field(j, "tops").get<std::vector<VertexList>>();
    } catch (const nlohmann::json::exception&) {
        bad("tops must be lists of vertex ids");
    }
    for (auto& t : tops) {
        std::sort(t.begin(), t.end());
        for (int v : t)
            if (v < 0 || v >= static_cast<int>(verts.size())) bad("vertex id out of range");
    }
    return Complex::build(std::move(verts), std::move(tops));
}

Json simplex_list(const Complex& k, const std::vector<int>& ids) {
    Json a = Json::array();
    for (int id : ids) a.push_back(k.simplex(id));
    return a;
}

std::vector<int> simplex_ids(const Complex& k, const Json& j) {
    if (!j.is_array()) bad("list of simplices expected");
    std::vector<int> ids;
    for (const auto& s : j) {
        VertexList vl;
        try {
            vl = s.get<VertexList>();
        } catch (const nlohmann::json::exception&) {
            bad("simplex must be a list of vertex ids");
        }
        std::sort(vl.begin(), vl.end());
        auto id = k.find(vl);
        if (!id) bad("not a simplex of the complex: " + s.dump());
        ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

Json members_json(const PLSet& s) { return simplex_list(*s.complex(), s.ids()); }

PLSet members_from(const ComplexPtr& k, const Json& j) { return PLSet(k, simplex_ids(*k, j)); }

Json to_json(const PLSet& s) { return Json{{"complex", to_json(*s.complex())}, {"members", members_json(s)}}; }

PLSet plset_from(const Json& j) { return members_from(complex_from(field(j, "complex")), field(j, "members")); }

Json to_json(const Tube& t) {
    Json pts = Json::array();
    for (const auto& p : t.pts) pts.push_back(to_json(p));
    return Json{{"points", pts}, {"eps_sq", to_json(t.eps_sq)}};
}

Tube tube_from(const Json& j) {
    std::vector<Vec> pts;
    for (const auto& p : field(j, "points")) pts.push_back(vec_from(p));
    if (pts.empty()) bad("tube needs points");
    return Tube::make(std::move(pts), q_from(field(j, "eps_sq")));
}

namespace {

Json factors_json(const std::vector<Vec>& fs) {
    if (fs.size() == 1) return to_json(fs[0]);
    Json a = Json::array();
    for (const auto& f : fs) a.push_back(to_json(f));
    return a;
}

// a single affine array or an array of them
std::vector<Vec> factors_from(const Json& j) {
    if (!j.is_array()) bad("factor list expected");
    if (j.empty()) return {};
    if (!j[0].is_array()) return {vec_from(j)};
    std::vector<Vec> fs;
    for (const auto& f : j) fs.push_back(vec_from(f));
    return fs;
}

} // namespace

Json to_json(const PLFFunction& f, bool with_domain) {
    Json pieces = Json::array();
    for (const auto& p : f.pieces()) {
        Json pj{{"simplex", f.complex().simplex(p.simplex)}, {"num", factors_json(p.num_factors)}};
        if (!p.den_factors.empty()) pj["den"] = factors_json(p.den_factors);
        pieces.push_back(pj);
    }
    Json j;
    if (with_domain) j["domain"] = to_json(f.domain());
    j["pieces"] = pieces;
    return j;
}

PLFFunction function_from(const PLSet& domain, const Json& j) {
    const Complex& k = *domain.complex();
    std::vector<PLFPiece> pieces;
    for (const auto& pj : field(j, "pieces")) {
        auto ids = simplex_ids(k, Json::array({field(pj, "simplex")}));
        auto num = factors_from(field(pj, "num"));
        std::vector<Vec> den;
        if (pj.contains("den")) den = factors_from(pj.at("den"));
        for (const auto& f : num)
            if (static_cast<int>(f.size()) != k.ambient_dim() + 1) bad("affine factor has the wrong length");
        for (const auto& f : den)
            if (static_cast<int>(f.size()) != k.ambient_dim() + 1) bad("affine factor has the wrong length");
        pieces.push_back(ratio_piece(ids[0], std::move(num), std::move(den)));
    }
    return PLFFunction::make(domain, std::move(pieces));
}

PLFFunction function_from(const Json& j) { return function_from(plset_from(field(j, "domain")), j); }

Json to_json(const PathGerm& p) {
    Json pieces = Json::array();
    for (const auto& pc : p.pieces()) pieces.push_back(Json{{"c", to_json(pc.c)}, {"v", to_json(pc.v)}});
    return Json{{"breaks", to_json(p.breaks())}, {"pieces", pieces}};
}

PathGerm path_from(const Json& j) {
    Vec breaks = vec_from(field(j, "breaks"));
    std::vector<PathGerm::Piece> pieces;
    for (const auto& pj : field(j, "pieces")) pieces.push_back({vec_from(field(pj, "c")), vec_from(field(pj, "v"))});
    return PathGerm::make(std::move(breaks), std::move(pieces));
}

Json to_json(const GermValue& g) { return Json::array({to_json(g.a), to_json(g.b)}); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_file(const std::string& path) {
    try {
        return Json::parse(slurp(path));
    } catch (const nlohmann::json::parse_error& e) {
        bad(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    out << text;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream ss;
    for (unsigned i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return ss.str();
}

Case case_from(const Json& j, const std::string& file) {
    Case c;
    c.raw = j;
    c.file = file;
    c.name = j.value("name", file);
    c.set = plset_from(field(j, "set"));
    if (j.contains("functions"))
        for (const auto& [name, fj] : j.at("functions").items()) c.functions.emplace(name, function_from(c.set, fj));
    if (j.contains("paths"))
        for (const auto& [name, pj] : j.at("paths").items()) c.paths.emplace(name, path_from(pj));
    if (j.contains("tubes"))
        for (const auto& [name, tj] : j.at("tubes").items()) c.tubes.emplace(name, tube_from(tj));
    c.expect = j.value("expect", Json::object());
    return c;
}

Case load_case(const std::string& path) {
    std::string base = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
    const std::string bytes = slurp(path);
    Json j;
    try {
        j = Json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        bad(path + ": " + e.what());
    }
    Case c = case_from(j, base);
    c.sha256 = sha256_hex(bytes);
    return c;
}

} // namespace saet::io
