#include "saet/errors.hpp"
#include "saet/shell.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <sstream>

namespace saet::shell {

using io::simplex_list;
using io::to_json;

Json analyze(const PLSet& s) {
    const Complex& k = *s.complex();
    Json germs = Json::array();
    for (const auto& g : germ_table(s))
        germs.push_back(Json{{"simplex", k.simplex(g.simplex)},
                             {"local_dim", g.local_dim},
                             {"out_dim", g.out_dim},
                             {"connected", g.connected},
                             {"obstructed", g.obstructed}});
    return Json{{"ambient_dim", k.ambient_dim()},
                {"members", s.count()},
                {"dim", s.dim()},
                {"rho", simplex_list(k, rho(s).ids())},
                {"lc", simplex_list(k, lc_part(s).ids())},
                {"eta", simplex_list(k, eta(s).ids())},
                {"appropriately_embedded", is_appropriately_embedded(s)},
                {"germs", germs}};
}

namespace {

Json interval_json(const Interval& i) { return Json::array({to_json(i.lo), to_json(i.hi)}); }

Json certificate_json(const Complex& k, const EpsCertificate& c) {
    bool all = std::all_of(c.checks.begin(), c.checks.end(), [](const Inequality& q) { return q.holds(); });
    return Json{{"tau", k.simplex(c.tau)},
                {"eps_sq", to_json(c.eps_sq)},
                {"halvings", c.halvings},
                {"checks", c.checks.size()},
                {"all_hold", all}};
}

} // namespace

Json carve(const PLSet& s, const Options& opt) {
    const Complex& k = *s.complex();
    CarveResult r = appropriate_embed(s, opt.bits);
    Json steps = Json::array();
    for (const auto& st : r.steps) {
        Json certs = Json::array();
        for (const auto& c : st.certificates) certs.push_back(certificate_json(k, c));
        steps.push_back(Json{{"level", st.level},
                             {"dim", st.dim},
                             {"taus", simplex_list(k, st.taus)},
                             {"eps_sq", to_json(st.eps_sq)},
                             {"certificates", certs}});
    }
    Json tubes = Json::array();
    for (const auto& t : r.set.tubes()) {
        Json tj = to_json(t.big);
        tj["level"] = t.level;
        tj["tau"] = t.big.tau >= 0 ? Json(k.simplex(t.big.tau)) : Json();
        tubes.push_back(tj);
    }
    const DeformCoeffs* co = nullptr;
    for (const auto& t : r.set.tubes())
        if (t.big.dim() > 0) co = &t.coeffs;
    Json out{{"levels", r.set.levels()},
             {"eta_dims", r.eta_dims},
             {"precision_bits", opt.bits},
             {"steps", steps},
             {"tubes", tubes}};
    if (co) {
        out["coefficients"] = Json{{"a1", interval_json(co->a1)},
                                   {"a2", interval_json(co->a2)},
                                   {"b1", interval_json(co->b1)},
                                   {"b2", interval_json(co->b2)}};
    }
    if (opt.probe) {
        auto qs = frontier_samples(r.set, opt.probe_count, 7);
        int connected = 0, disconnected = 0, inconclusive = 0, obstructions = 0, codim1 = 0;
        for (std::size_t i = 0; i < qs.size(); ++i) {
            ProbeReport p = probe_germ(r.set, qs[i], probe_radius(r.set, qs[i]), 48, 100 + i);
            connected += p.verdict == GermVerdict::Connected;
            disconnected += p.verdict == GermVerdict::Disconnected;
            inconclusive += p.verdict == GermVerdict::Inconclusive;
            obstructions += p.obstruction();
            codim1 += p.verdict == GermVerdict::Connected && p.codim() == 1;
        }
        out["probe"] = Json{{"samples", qs.size()},
                            {"connected", connected},
                            {"disconnected", disconnected},
                            {"inconclusive", inconclusive},
                            {"codim1", codim1},
                            {"obstructions", obstructions}};
    }
    return out;
}

Json extend(const PLFFunction& f) {
    const Complex& k = f.complex();
    ExtensionReport r = weak_extension(f);
    Json faces = Json::array();
    for (const auto& fl : r.faces) {
        Json fj{{"face", k.simplex(fl.face)}, {"status", to_string(fl.status)}};
        if (fl.value) {
            if (auto vv = fl.value->vertex_values(k)) fj["vertex_values"] = to_json(*vv);
            fj["value"] = to_string(fl.value->num) + " / (" + to_string(fl.value->den) + ")";
        }
        faces.push_back(fj);
    }
    Json out{{"V", simplex_list(k, r.V.ids())},
             {"Y", simplex_list(k, r.Y.ids())},
             {"faces", faces},
             {"discontinuities", simplex_list(k, r.discontinuities)},
             {"hypothesis_holds", r.hypothesis_holds},
             {"hypothesis_failures", simplex_list(k, r.hypothesis_failures)},
             {"bound_violations", simplex_list(k, r.bound_violations)}};
    if (f.domain().dim() == 2) {
        try {
            dim2_extension(f);
            out["dim2"] = "ok";
        } catch (const Error& e) {
            out["dim2"] = error_kind_name(e.kind());
        }
    } else {
        out["dim2"] = "n/a";
    }
    if (f.is_pl()) out["oracle_agrees"] = limit_tuples(f, r) == graph_closure_oracle(f).boundary_fibers;
    return out;
}

Json eval(const PLFFunction& f, const PathGerm& a) {
    const PLSet& m = f.domain();
    Json out{{"core", to_json(core(a))},
             {"in_extension", is_in_extension(a, m)},
             {"adjacency", to_string(adjacency_test(a, m))}};
    try {
        out["depth"] = depth(a, m);
    } catch (const Error& e) {
        out["depth"] = error_kind_name(e.kind());
    }
    if (is_in_extension(a, m)) {
        out["mode"] = "evaluate";
        out["value"] = to_json(evaluate(f, a));
    } else {
        out["mode"] = "extension";
        out["value"] = to_json(eval_hom(f, a, weak_extension(f)));
    }
    return out;
}

// ------------------------------------------------------------------ export

namespace {

std::string num(const Q& q) {
    std::ostringstream ss;
    ss << std::setprecision(17) << to_double(q);
    return ss.str();
}

void vertex_line(std::ostringstream& out, const Vec& p, const Q& z = 0) {
    out << "v";
    for (std::size_t i = 0; i < 3; ++i) out << ' ' << num(i < p.size() ? p[i] : (i == 2 ? z : Q(0)));
    out << '\n';
}

void need_dim(int n, int max) {
    if (n > max)
        throw Error(ErrorKind::DimensionTooHigh,
                    "ambient dimension " + std::to_string(n) + " exceeds " + std::to_string(max));
}

// Grid cells (squares or cubes) whose exact centre passes `inside`.
std::string raster(const Vec& lo, const Vec& hi, int grid, const std::function<bool(const Vec&)>& inside,
                   const std::string& header) {
    const int n = static_cast<int>(lo.size());
    need_dim(n, 3);
    if (n < 2) throw Error(ErrorKind::PreconditionViolated, "raster export needs dimension 2 or 3");
    std::ostringstream out;
    out << "# " << header << '\n';
    Vec step(n);
    for (int i = 0; i < n; ++i) step[i] = (hi[i] - lo[i]) / grid;
    long nv = 0;
    std::vector<int> idx(n, 0);
    for (;;) {
        Vec c(n), a(n);
        for (int i = 0; i < n; ++i) {
            a[i] = lo[i] + step[i] * idx[i];
            c[i] = a[i] + step[i] / 2;
        }
        if (inside(c)) {
            if (n == 2) {
                vertex_line(out, a);
                vertex_line(out, {a[0] + step[0], a[1]});
                vertex_line(out, {a[0] + step[0], a[1] + step[1]});
                vertex_line(out, {a[0], a[1] + step[1]});
                out << "f " << nv + 1 << ' ' << nv + 2 << ' ' << nv + 3 << ' ' << nv + 4 << '\n';
                nv += 4;
            } else {
                for (int m = 0; m < 8; ++m)
                    vertex_line(out, {a[0] + (m & 1 ? step[0] : Q(0)), a[1] + (m & 2 ? step[1] : Q(0)),
                                      a[2] + (m & 4 ? step[2] : Q(0))});
                static const int quads[6][4] = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                                                {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
                for (const auto& q : quads)
                    out << "f " << nv + 1 + q[0] << ' ' << nv + 1 + q[1] << ' ' << nv + 1 + q[2] << ' ' << nv + 1 + q[3]
                        << '\n';
                nv += 8;
            }
        }
        int i = 0;
        while (i < n && ++idx[i] == grid) idx[i++] = 0;
        if (i == n) break;
    }
    return out.str();
}

void bbox(const std::vector<Vec>& pts, Vec& lo, Vec& hi) {
    lo = hi = pts[0];
    for (const auto& p : pts)
        for (std::size_t i = 0; i < p.size(); ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
}

} // namespace

std::string export_mesh_off(const PLSet& s) {
    const Complex& k = *s.complex();
    need_dim(k.ambient_dim(), 3);
    PLSet cl = closure(s);
    std::vector<VertexList> faces;
    for (int id : cl.ids()) {
        if (k.dim(id) == 2) faces.push_back(k.simplex(id));
        if (k.dim(id) == 1) {
            bool in_triangle = false;
            for (int c : k.cofaces(id))
                if (c != id && cl.contains(c)) in_triangle = true;
            if (!in_triangle) faces.push_back(k.simplex(id));
        }
    }
    std::ostringstream out;
    out << "OFF\n" << k.vertices().size() << ' ' << faces.size() << " 0\n";
    for (const auto& p : k.vertices()) {
        for (std::size_t i = 0; i < 3; ++i) out << (i ? " " : "") << num(i < p.size() ? p[i] : Q(0));
        out << '\n';
    }
    for (const auto& f : faces) {
        out << f.size();
        for (int v : f) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

std::string export_tube_obj(const Tube& t, int grid) {
    need_dim(static_cast<int>(t.pts[0].size()), 3);
    Vec lo, hi;
    bbox(t.pts, lo, hi);
    Q pad = 1 + t.eps_sq;
    if (t.dim() > 0) {
        Q diam = 0;
        for (std::size_t i = 0; i < lo.size(); ++i) diam += hi[i] - lo[i];
        pad = (1 + t.star_sq()) * diam;
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] -= pad;
        hi[i] += pad;
    }
    return raster(lo, hi, grid, [&](const Vec& x) { return tube_membership(t, x) != TubeMembership::Outside; },
                  "closed tube, eps^2 = " + to_string(t.eps_sq));
}

std::string export_carved_obj(const CarvedSet& n, int grid) {
    Vec lo, hi;
    bbox(n.base().complex()->vertices(), lo, hi);
    return raster(lo, hi, grid, [&](const Vec& x) { return n.member(x); },
                  "carved set, " + std::to_string(n.tubes().size()) + " tubes");
}

std::string export_extension_obj(const PLFFunction& f, int subdiv) {
    const Complex& k = f.complex();
    need_dim(k.ambient_dim(), 2);
    if (k.ambient_dim() != 2) throw Error(ErrorKind::PreconditionViolated, "extension graph needs a planar domain");
    ExtensionReport r = weak_extension(f);
    const PLSet& m = f.domain();
    std::ostringstream out;
    out << "# graph of the weak extension over V \\ Y\n";
    long nv = 0;
    for (int id : closure(m).ids()) {
        if (k.dim(id) != 2) continue;
        const auto p = k.points(id);
        std::map<std::pair<int, int>, long> index;
        std::map<std::pair<int, int>, bool> ok;
        for (int i = 0; i <= subdiv; ++i)
            for (int j = 0; i + j <= subdiv; ++j) {
                const int l = subdiv - i - j;
                Vec x = vscale(vadd(vadd(vscale(p[0], i), vscale(p[1], j)), vscale(p[2], l)), Q(1, subdiv));
                std::optional<Q> val;
                if (m.contains_point(x)) {
                    try {
                        val = f.eval(x);
                    } catch (const Error&) {
                    }
                } else {
                    val = r.G(f, x);
                }
                ok[{i, j}] = val.has_value();
                if (val) {
                    vertex_line(out, x, *val);
                    index[{i, j}] = ++nv;
                }
            }
        auto tri = [&](std::pair<int, int> a, std::pair<int, int> b, std::pair<int, int> c) {
            if (ok[a] && ok[b] && ok[c]) out << "f " << index[a] << ' ' << index[b] << ' ' << index[c] << '\n';
        };
        for (int i = 0; i < subdiv; ++i)
            for (int j = 0; i + j < subdiv; ++j) {
                tri({i, j}, {i + 1, j}, {i, j + 1});
                if (i + j + 2 <= subdiv) tri({i + 1, j}, {i + 1, j + 1}, {i, j + 1});
            }
    }
    return out.str();
}

} // namespace saet::shell
