// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "saet/carve.hpp"
#include "saet/errors.hpp"
#include "saet/extend.hpp"
#include "saet/fixtures.hpp"
#include "saet/homlab.hpp"
#include "saet/io.hpp"
#include "saet/shell.hpp"

#include "gen.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

using namespace saet;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string str(long n) { return std::to_string(n); }

// --- 1
Outcome functionals_sum() {
    gen::Rng rng(101);
    long bad = 0, total = 0;
    for (int s = 0; s < 50; ++s) {
        const int d = static_cast<int>(rng.integer(1, 4));
        const int n = static_cast<int>(rng.integer(d, 4));
        auto pts = rng.simplex(d, n, -3, 3, 16);
        FaceFunctionals ff = face_functionals(pts);
        for (int t = 0; t < 100; ++t, ++total) {
            Vec x = rng.interior_point(pts, 1000);
            Q sum = 0;
            for (int i = 0; i <= d; ++i) sum += ff.eval(i, x);
            bad += sum != 1;
        }
    }
    return {bad == 0, str(total) + " points, " + str(bad) + " with sum != 1"};
}

// --- 2
// squared distance to the boundary of a full-dimensional simplex, x inside
Q dist_bdry_sq(const FaceFunctionals& ff, const Vec& x) {
    Q best = -1;
    for (int i = 0; i <= ff.dim(); ++i) {
        Q f = ff.eval(i, x);
        Q v = f * f / ff.unorm2[i];
        if (best < 0 || v < best) best = v;
    }
    return best;
}

Outcome incenter_enclosures() {
    gen::Rng rng(102);
    const Q target = pow2_neg(60);
    int wide = 0, outside = 0, loose = 0;
    for (int s = 0; s < 50; ++s) {
        const int d = s % 2 ? 3 : 2;
        auto pts = rng.simplex(d, d, -2, 2, 8);
        IncenterResult r = incenter(pts, target);
        wide += max_width(r.p) > target || r.r.hi - r.r.lo > target;
        FaceFunctionals ff = face_functionals(pts);
        // barycentric lattice with about 10^4 points
        const int steps = d == 2 ? 140 : 37;
        Q best = 0;
        std::vector<int> idx(d, 0);
        for (;;) {
            int used = 0;
            for (int v : idx) used += v;
            if (used <= steps) {
                Vec x = vscale(pts[0], frac(steps - used, steps));
                for (int i = 0; i < d; ++i) x = vadd(x, vscale(pts[i + 1], frac(idx[i], steps)));
                best = std::max(best, dist_bdry_sq(ff, x));
            }
            int i = 0;
            while (i < d && ++idx[i] > steps) idx[i++] = 0;
            if (i == d) break;
        }
        // grid max never beats the certified inradius, and gets close to it
        Interval r2 = r.r * r.r;
        outside += best > r2.hi;
        loose += best * Q(100) < r2.lo * Q(81);
    }
    return {wide == 0 && outside == 0 && loose == 0,
            str(wide) + " enclosures wider than 2^-60, " + str(outside) + " grid maxima above the enclosure, " +
                str(loose) + " grid maxima below 0.9 r"};
}

// --- 3
Outcome tube_equivalence() {
    gen::Rng rng(103);
    long bad = 0, total = 0, inside = 0;
    for (int s = 0; s < 20; ++s) {
        const int n = 2 + s % 2;
        const int d = static_cast<int>(rng.integer(0, n - 1));
        auto pts = rng.simplex(d, n, -2, 2, 8);
        const Q eps_sq = frac(rng.integer(1, 15), 16);
        Tube t = Tube::make(pts, eps_sq);
        Vec lo = pts[0], hi = pts[0];
        for (const auto& p : pts)
            for (int i = 0; i < n; ++i) {
                lo[i] = std::min(lo[i], p[i]);
                hi[i] = std::max(hi[i], p[i]);
            }
        for (int k = 0; k < 5000; ++k, ++total) {
            Vec x(n);
            if (k % 2) {
                for (int i = 0; i < n; ++i) x[i] = lo[i] - 1 + (hi[i] - lo[i] + 2) * frac(rng.integer(0, 4096), 4096);
            } else {
                // near tau, to populate the inside and the frontier
                x = d == 0 ? pts[0] : rng.interior_point(pts, 64);
                for (int i = 0; i < n; ++i) x[i] += rng.rational(-1, 1, 64) * frac(1, 2);
            }
            const bool a = tube_membership(t, x) != TubeMembership::Outside;
            inside += a;
            bad += a != hat_lift_membership(t, x);
        }
    }
    return {bad == 0 && inside > 0, str(total) + " points (" + str(inside) + " inside), " + str(bad) + " disagreements"};
}

// --- 4
Outcome certificates_sampled(const std::vector<io::Case>& cases) {
    int certs = 0, dirty = 0;
    long samples = 0;
    std::string where;
    for (const auto& cs : cases) {
        const Complex& k = *cs.set.complex();
        CarveResult r = appropriate_embed(cs.set);
        for (const auto& st : r.steps)
            for (const auto& cert : st.certificates) {
                std::vector<int> peers;
                for (int t : st.taus)
                    if (t != cert.tau) peers.push_back(t);
                FalsifierReport rep = falsify_tube_certificate(k, cert.tau, cert.eps_sq, peers, 10000, 400 + certs);
                ++certs;
                samples += rep.samples;
                if (!rep.clean()) {
                    ++dirty;
                    where += " " + cs.name + ":" + io::Json(k.simplex(cert.tau)).dump();
                }
            }
    }
    return {certs > 0 && dirty == 0,
            str(certs) + " certificates, " + str(samples) + " samples, " + str(dirty) + " falsified" + where};
}

// --- 5
Outcome separating_hyperplanes() {
    gen::Rng rng(105);
    int bad = 0, built = 0;
    while (built < 100) {
        const int n = static_cast<int>(rng.integer(2, 4));
        const int m = static_cast<int>(rng.integer(0, n - 1)); // dim of the common face
        const int a = static_cast<int>(rng.integer(1, n - m)), b = static_cast<int>(rng.integer(1, n - m));
        // common face in x_n = 0, the rest strictly below / above, then a random affine image
        std::vector<Vec> common, neg, pos;
        for (int i = 0; i <= m; ++i) {
            Vec p = rng.point(n, -2, 2, 8);
            p[n - 1] = 0;
            common.push_back(p);
        }
        for (int i = 0; i < a; ++i) {
            Vec p = rng.point(n, -2, 2, 8);
            p[n - 1] = -rng.rational(0, 2, 8) - frac(1, 8);
            neg.push_back(p);
        }
        for (int i = 0; i < b; ++i) {
            Vec p = rng.point(n, -2, 2, 8);
            p[n - 1] = rng.rational(0, 2, 8) + frac(1, 8);
            pos.push_back(p);
        }
        Mat A(n, Vec(n));
        for (auto& row : A)
            for (auto& x : row) x = rng.rational(-2, 2, 4);
        Vec shift = rng.point(n, -1, 1, 4);
        auto image = [&](const Vec& p) {
            Vec y = shift;
            for (int i = 0; i < n; ++i) y[i] += dot(A[i], p);
            return y;
        };
        std::vector<Vec> t1, t2, cm;
        for (const auto& p : common) cm.push_back(image(p));
        t1 = t2 = cm;
        for (const auto& p : neg) t1.push_back(image(p));
        for (const auto& p : pos) t2.push_back(image(p));
        if (!affinely_independent(t1) || !affinely_independent(t2) || !affinely_independent(cm)) continue;
        // the image must still be a full-rank map, else the sides collapse
        std::vector<Vec> frame{shift};
        for (int i = 0; i < n; ++i) {
            Vec e = zeros(n);
            e[i] = 1;
            frame.push_back(image(e));
        }
        if (!affinely_independent(frame)) continue;
        ++built;
        Hyperplane h = separating_hyperplane(t1, t2);
        bool ok = true;
        for (const auto& p : cm) ok = ok && h(p) == 0;
        for (std::size_t i = m + 1; i < t1.size(); ++i) ok = ok && h(t1[i]) < 0;
        for (std::size_t i = m + 1; i < t2.size(); ++i) ok = ok && h(t2[i]) > 0;
        // vanishing on aff, including points outside the face
        for (int s = 0; s < 5 && m > 0; ++s) {
            Vec x = zeros(n);
            Q rest = 1;
            for (int i = 1; i <= m; ++i) {
                Q c = rng.rational(-3, 3, 8);
                x = vadd(x, vscale(cm[i], c));
                rest -= c;
            }
            x = vadd(x, vscale(cm[0], rest));
            ok = ok && h(x) == 0;
        }
        bad += !ok;
    }
    return {bad == 0, str(built) + " pairs, " + str(bad) + " violations"};
}

// --- 6
Outcome deformation() {
    // symbolic: s = x0, s' = x1, denominators cleared
    const Poly s = Poly::variable(2, 0), sp = Poly::variable(2, 1);
    const Poly diff = sp - s;
    // a1 + a2 b2 = s + (sp - s)/sp * (-(s sp)/(sp - s))
    const Poly ident1 = s * sp * diff + diff * (-(s * sp));
    // a2 b1 = (sp - s)/sp * sp/(sp - s)
    const bool ident2 = diff * sp == sp * diff;
    std::string detail = std::string("a1+a2*b2 ") + (ident1.is_zero() ? "== 0" : "!= 0") + ", a2*b1 " +
                         (ident2 ? "== 1" : "!= 1");

    PLSet fa = fixtures::fix_a();
    const Complex& k = *fa.complex();
    CarveResult r = appropriate_embed(fa);
    bool coeffs_ok = true;
    for (const auto& t : r.set.tubes()) {
        if (t.big.dim() == 0) continue;
        const DeformCoeffs& c = t.coeffs;
        Interval one = c.a2 * c.b1, zero = c.a1 + c.a2 * c.b2;
        coeffs_ok = coeffs_ok && one.lo <= 1 && 1 <= one.hi && zero.lo <= 0 && 0 <= zero.hi;
    }
    gen::Rng rng(106);
    const Q tol = pow2_neg(30);
    int bad = 0, back = 0, tried = 0;
    const auto ids = fa.ids();
    for (int i = 0; i < 1000; ++i) {
        const int id = ids[static_cast<std::size_t>(rng.integer(0, static_cast<long>(ids.size()) - 1))];
        const Vec x = k.dim(id) == 0 ? k.vertex(k.simplex(id)[0]) : rng.interior_point(k.points(id));
        ++tried;
        try {
            IVec y = r.pull.apply(push_point(r.push, x));
            bad += !contains(y, x) || max_width(y) > tol;
            if (r.set.member(x)) {
                ++back;
                IVec z = r.push.apply(pull_point(r.pull, x));
                bad += !contains(z, x) || max_width(z) > tol;
            }
        } catch (const Error& e) {
            ++bad;
        }
    }
    detail += ", tube coefficients " + std::string(coeffs_ok ? "consistent" : "inconsistent") + ", " + str(tried) +
              " h(g(x)) and " + str(back) + " g(h(x)) round trips, " + str(bad) + " failures";
    return {ident1.is_zero() && ident2 && coeffs_ok && bad == 0, detail};
}

// --- 7
Outcome end_to_end() {
    auto t0 = std::chrono::steady_clock::now();
    CarveResult r = appropriate_embed(fixtures::fix_a());
    bool dec = r.eta_dims.size() == 3 && r.eta_dims.back() == -1;
    for (std::size_t i = 1; i < r.eta_dims.size(); ++i) dec = dec && r.eta_dims[i] < r.eta_dims[i - 1];
    auto qs = frontier_samples(r.set, 1000, 77);
    std::vector<ProbeReport> base(qs.size()), dense(qs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < qs.size();) {
            const Q rad = probe_radius(r.set, qs[i]);
            base[i] = probe_germ(r.set, qs[i], rad, 48, 1000 + i);
            dense[i] = probe_germ(r.set, qs[i], rad, 192, 5000 + i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, std::thread::hardware_concurrency()); ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    int connected = 0, codim1 = 0, dis = 0, dis4 = 0, escalated = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        connected += base[i].verdict == GermVerdict::Connected;
        codim1 += base[i].verdict == GermVerdict::Connected && base[i].codim() == 1;
        dis += base[i].verdict == GermVerdict::Disconnected;
        escalated += base[i].samples > 48;
        dis4 += dense[i].verdict == GermVerdict::Disconnected;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream d;
    d << r.set.levels() << " levels, eta dims";
    for (int e : r.eta_dims) d << ' ' << e;
    d << "; " << qs.size() << " probes: " << connected << " connected, " << codim1 << " codim 1, " << dis
      << " disconnected, " << escalated << " resampled, " << dis4 << " disconnected at 4x; " << std::fixed;
    d.precision(1);
    d << secs << " s";
    const int n = static_cast<int>(qs.size());
    return {r.set.levels() == 2 && dec && n == 1000 && connected == n && codim1 == n && dis == 0 && dis4 == 0,
            d.str()};
}

// --- 8
Outcome fix_c_example(const io::Case& fc) {
    const Complex& k = *fc.set.complex();
    const PLFFunction& g = fc.functions.at("g");
    ExtensionReport r = weak_extension(g);
    // Y: the open z-axis rays away from the origin
    const bool y_ok = r.Y.ids() == io::simplex_ids(k, io::Json::parse("[[0],[6],[0,3],[3,6]]"));
    // y = 0 wall carries z, the x = y wall carries 0
    int z_wall = 0, zero_wall = 0, faces = 0;
    for (const auto& fl : r.faces) {
        if (fl.status != FaceLimits::Status::Extends || !fl.value || k.dim(fl.face) != 2) continue;
        const auto pts = k.points(fl.face);
        bool y0 = true, xy = true;
        for (const auto& p : pts) {
            y0 = y0 && p[1] == 0;
            xy = xy && p[0] == p[1];
        }
        if (!y0 && !xy) continue;
        ++faces;
        auto vv = fl.value->vertex_values(k);
        if (!vv) continue;
        bool is_z = true, is_0 = true;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            is_z = is_z && (*vv)[i] == pts[i][2];
            is_0 = is_0 && (*vv)[i] == 0;
        }
        z_wall += y0 && is_z;
        zero_wall += xy && is_0;
    }
    auto at0 = r.G(g, {0, 0, 0});
    const bool ok = y_ok && faces > 0 && z_wall + zero_wall == faces && z_wall > 0 && zero_wall > 0 && at0 && *at0 == 0;
    return {ok, "Y = " + io::simplex_list(k, r.Y.ids()).dump() + ", " + str(z_wall) + " wall faces valued z, " +
                    str(zero_wall) + " valued 0 (of " + str(faces) + "), G(0) = " + (at0 ? to_string(*at0) : "none")};
}

// --- 9
Outcome fix_b_random_and_fix_a_step(const io::Case& fa) {
    PLSet m = fixtures::fix_b();
    const Complex& k = *m.complex();
    gen::Rng rng(109);
    int bad = 0;
    const PLSet cl = closure(m);
    for (int i = 0; i < 50; ++i) {
        Vec vals(k.vertices().size());
        for (auto& v : vals) v = rng.rational(-3, 3, 8);
        PLFFunction f = pl_from_vertex_values(m, vals);
        try {
            ExtensionReport r = dim2_extension(f);
            bool ok = r.Y.empty();
            for (int id : cl.ids()) {
                const auto pts = k.points(id);
                Vec x = k.dim(id) == 0 ? pts[0] : rng.interior_point(pts);
                auto gx = r.G(f, x);
                if (m.contains(id)) {
                    ok = ok && gx && *gx == f.eval(x);
                } else if (r.V.contains(id)) {
                    auto fib = graph_fiber(f, x);
                    ok = ok && gx && fib.size() == 1 && *gx == fib[0];
                }
            }
            bad += !ok;
        } catch (const Error&) {
            ++bad;
        }
    }
    // the step function: the germ hypothesis fails exactly on {y = 0} minus the origin
    const Complex& ka = *fa.set.complex();
    std::vector<int> axis;
    for (int id : closure(fa.set).ids()) {
        bool on = true, origin = false;
        for (int v : ka.simplex(id)) {
            on = on && ka.vertex(v)[1] == 0;
            origin = origin || (ka.vertex(v)[0] == 0 && ka.vertex(v)[1] == 0);
        }
        if (on && !(origin && ka.dim(id) == 0)) axis.push_back(id);
    }
    std::string step_detail;
    bool step_ok = false;
    try {
        dim2_extension(fa.functions.at("step"));
        step_detail = "step accepted";
    } catch (const Error& e) {
        std::vector<int> fails = germ_hypothesis_failures(fa.set);
        step_ok = e.kind() == ErrorKind::HypothesisViolated && fails == axis;
        step_detail = std::string("step rejected with ") + error_kind_name(e.kind()) + " at " +
                      io::simplex_list(ka, fails).dump();
    }
    return {bad == 0 && step_ok, str(bad) + " of 50 random PL functions failed; " + step_detail};
}

// --- 10
Outcome oracle(const std::vector<io::Case>& cases) {
    int n = 0, bad = 0;
    std::string where;
    for (const auto& cs : cases)
        for (const auto& [name, f] : cs.functions) {
            if (!f.is_pl()) continue;
            ++n;
            if (limit_tuples(f, weak_extension(f)) != graph_closure_oracle(f).boundary_fibers) {
                ++bad;
                where += " " + cs.name + "." + name;
            }
        }
    return {n > 0 && bad == 0, str(n) + " PL functions, " + str(bad) + " mismatches" + where};
}

// --- 11
Outcome witness(const io::Case& fc) {
    const io::Json& w = fc.expect.at("witness");
    const Complex& k = *fc.set.complex();
    const int tau = io::simplex_ids(k, io::Json::array({w.at("tau")}))[0];
    const int sigma = io::simplex_ids(k, io::Json::array({w.at("sigma")}))[0];
    try {
        HomWitness h = distinct_homs_witness(fc.set, tau, sigma, io::vec_from(w.at("q1")), io::vec_from(w.at("q2")),
                                             fc.paths.at(w.at("path")));
        const bool ok = same_core(h.core1, h.core2) && is_zero_germ(h.psi1) &&
                        !is_zero_germ(h.psi2) && !(h.psi1 == h.psi2);
        return {ok, "psi1 = " + to_string(h.psi1) + ", psi2 = " + to_string(h.psi2) + ", cores " +
                        (same_core(h.core1, h.core2) ? "equal" : "differ")};
    } catch (const Error& e) {
        return {false, e.what()};
    }
}

// --- 12
Outcome determinism() {
    const std::string bin = SAET_BIN, corpus = SAET_CORPUS_DIR;
    const std::string a = "acceptance_manifest_a.json", b = "acceptance_manifest_b.json";
    auto run = [&](const std::string& out) {
        const std::string cmd = "\"" + bin + "\" verify --corpus \"" + corpus + "\" --jobs 2 --out " + out + " 2>/dev/null";
        return std::system(cmd.c_str());
    };
    const int ra = run(a), rb = run(b);
    std::string ba, bb;
    try {
        ba = io::slurp(a);
        bb = io::slurp(b);
    } catch (const Error& e) {
        return {false, e.what()};
    }
    std::remove(a.c_str());
    std::remove(b.c_str());
    const bool ok = ra == 0 && rb == 0 && !ba.empty() && ba == bb;
    return {ok, "exit codes " + str(ra) + "/" + str(rb) + ", " + str(static_cast<long>(ba.size())) + " bytes, " +
                    (ba == bb ? "identical" : "different") + ", sha256 " + io::sha256_hex(ba).substr(0, 16)};
}

} // namespace

int main() {
    std::vector<io::Case> cases;
    try {
        cases = shell::load_corpus(SAET_CORPUS_DIR);
    } catch (const std::exception& e) {
        std::cerr << "cannot load corpus: " << e.what() << "\n";
        return 2;
    }
    auto find = [&](const std::string& name) -> const io::Case& {
        for (const auto& c : cases)
            if (c.name == name) return c;
        throw std::runtime_error("corpus lacks " + name);
    };

    std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1, functionals_sum},
        {2, incenter_enclosures},
        {3, tube_equivalence},
        {4, [&] { return certificates_sampled(cases); }},
        {5, separating_hyperplanes},
        {6, deformation},
        {7, end_to_end},
        {8, [&] { return fix_c_example(find("fix_c")); }},
        {9, [&] { return fix_b_random_and_fix_a_step(find("fix_a")); }},
        {10, [&] { return oracle(cases); }},
        {11, [&] { return witness(find("fix_c")); }},
        {12, determinism},
    };
    int failed = 0;
    for (const auto& [id, run] : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::printf("%s %d: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
