#include "saet/errors.hpp"
#include "saet/shell.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <random>
#include <thread>

namespace saet::shell {

using io::Json;
using io::simplex_list;
using io::to_json;

bool RunManifest::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

Json RunManifest::json() const {
    Json in = Json::array();
    for (const auto& [f, h] : inputs) in.push_back(Json{{"file", f}, {"sha256", h}});
    Json cs = Json::array();
    int failed = 0;
    for (const auto& c : checks) {
        Json cj{{"name", c.name}, {"pass", c.pass}};
        if (!c.detail.empty()) cj["detail"] = c.detail;
        cs.push_back(cj);
        failed += !c.pass;
    }
    return Json{{"command", command},
                {"inputs", in},
                {"precision", Json{{"bits", bits}}},
                {"suites", suites},
                {"certificates", certificates},
                {"checks", cs},
                {"summary", Json{{"total", checks.size()}, {"failed", failed}}}};
}

const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> s{"exact", "core", "metric", "tube", "carve", "extend", "homlab"};
    return s;
}

std::vector<io::Case> load_corpus(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    std::vector<io::Case> out;
    for (const auto& f : files) out.push_back(io::load_case(f));
    return out;
}

namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng); }
    Q rational(long lo, long hi, long den) { return frac(integer(lo * den, hi * den), den); }
    Vec interior(const std::vector<Vec>& pts) {
        Vec x = zeros(pts[0].size());
        Q tot = 0;
        Vec w;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            w.push_back(Q(integer(1, 32)));
            tot += w.back();
        }
        for (std::size_t i = 0; i < pts.size(); ++i) x = vadd(x, vscale(pts[i], w[i] / tot));
        return x;
    }
};

using Checks = std::vector<CheckResult>;

struct Ctx {
    const Options& opt;
    Checks checks;
    std::vector<std::string> certs;

    void add(std::string name, bool pass, std::string detail = {}) {
        checks.push_back({std::move(name), pass, pass ? std::string() : std::move(detail)});
    }
};

std::string dump(const Json& j) { return j.dump(); }

void expect_eq(Ctx& c, const std::string& name, const Json& got, const Json& want) {
    c.add(name, got == want, "got " + dump(got) + ", expected " + dump(want));
}

// ---------------------------------------------------------------- suites

void exact_suite(Ctx& c) {
    Rng rng(1);
    int bad = 0;
    for (int s = 0; s < 20; ++s) {
        const int d = static_cast<int>(rng.integer(1, 4));
        std::vector<Vec> pts;
        do {
            pts.clear();
            for (int i = 0; i <= d; ++i) {
                Vec p(d);
                for (auto& x : p) x = rng.rational(-2, 2, 8);
                pts.push_back(p);
            }
        } while (!affinely_independent(pts));
        FaceFunctionals ff = face_functionals(pts);
        for (int t = 0; t < 20; ++t) {
            Vec x = rng.interior(pts);
            Q sum = 0;
            for (int i = 0; i <= d; ++i) sum += ff.eval(i, x);
            bad += sum != 1;
        }
    }
    c.add("exact.functionals_sum_to_one", bad == 0, std::to_string(bad) + " points off");

    bad = 0;
    for (int i = 0; i < 50; ++i) {
        Q s = rng.rational(0, 4, 16), sp = rng.rational(0, 4, 16);
        if (s == 0 || sp == 0 || s == sp) continue;
        if (s > sp) std::swap(s, sp);
        const Q a1 = s, a2 = (sp - s) / sp, b1 = sp / (sp - s), b2 = -s * sp / (sp - s);
        bad += (a1 + a2 * b2 != 0) + (a2 * b1 != 1);
    }
    c.add("exact.deformation_identities", bad == 0, std::to_string(bad) + " failures");
}

void metric_suite(Ctx& c) {
    Rng rng(2);
    const Q target = pow2_neg(c.opt.bits);
    int bad = 0;
    for (int s = 0; s < 10; ++s) {
        const int d = s % 2 ? 3 : 2;
        std::vector<Vec> pts;
        do {
            pts.clear();
            for (int i = 0; i <= d; ++i) {
                Vec p(d);
                for (auto& x : p) x = rng.rational(-2, 2, 8);
                pts.push_back(p);
            }
        } while (!affinely_independent(pts));
        IncenterResult r = incenter(pts, target);
        bad += max_width(r.p) > target || r.r.hi - r.r.lo > target;
    }
    c.add("metric.incenter_width", bad == 0, std::to_string(bad) + " enclosures too wide");
}

void core_suite(Ctx& c, const io::Case& cs) {
    const std::string p = "core." + cs.name + ".";
    const PLSet& s = cs.set;
    c.add(p + "eta_iff_embedded", eta(s).empty() == is_appropriately_embedded(s));
    c.add(p + "lc_dense", lc_part(s).subset_of(s) && closure(lc_part(s)) == closure(s) && rho(s).subset_of(s));
    if (!cs.expect.contains("analyze")) return;
    const Json got = analyze(s);
    for (const auto& [key, want] : cs.expect.at("analyze").items()) expect_eq(c, p + key, got.value(key, Json()), want);
}

void tube_suite(Ctx& c, const io::Case& cs) {
    for (const auto& [name, t] : cs.tubes) {
        Rng rng(3);
        Vec lo = t.pts[0], hi = t.pts[0];
        for (const auto& q : t.pts)
            for (std::size_t i = 0; i < q.size(); ++i) {
                lo[i] = std::min(lo[i], q[i]);
                hi[i] = std::max(hi[i], q[i]);
            }
        int bad = 0;
        for (int i = 0; i < 2000; ++i) {
            Vec x(lo.size());
            for (std::size_t j = 0; j < x.size(); ++j)
                x[j] = lo[j] - 1 + (hi[j] - lo[j] + 2) * frac(rng.integer(0, 1024), 1024);
            bad += (tube_membership(t, x) != TubeMembership::Outside) != hat_lift_membership(t, x);
        }
        c.add("tube." + cs.name + "." + name + ".membership_equivalence", bad == 0, std::to_string(bad) + " disagreements");
    }
}

void carve_suite(Ctx& c, const io::Case& cs) {
    if (!cs.expect.contains("carve")) return;
    const std::string p = "carve." + cs.name + ".";
    const Complex& k = *cs.set.complex();
    CarveResult r = appropriate_embed(cs.set, c.opt.bits);
    const Json& want = cs.expect.at("carve");
    if (want.contains("levels")) expect_eq(c, p + "levels", r.set.levels(), want.at("levels"));
    if (want.contains("eta_dims")) expect_eq(c, p + "eta_dims", r.eta_dims, want.at("eta_dims"));

    bool holds = true;
    int falsified = 0;
    for (const auto& st : r.steps)
        for (const auto& cert : st.certificates) {
            c.certs.push_back(cs.file + ":L" + std::to_string(st.level) + ":" + dump(k.simplex(cert.tau)) +
                              ":eps_sq=" + to_string(cert.eps_sq));
            for (const auto& q : cert.checks) holds = holds && q.holds();
            if (k.dim(cert.tau) == 0) continue;
            std::vector<int> peers;
            for (int t : st.taus)
                if (t != cert.tau) peers.push_back(t);
            if (!falsify_tube_certificate(k, cert.tau, cert.eps_sq, peers, 500, 11).clean()) ++falsified;
        }
    c.add(p + "certificates_hold", holds);
    c.add(p + "falsifier_clean", falsified == 0, std::to_string(falsified) + " certificates falsified");

    // g∘h and h∘g round trips
    Rng rng(4);
    const Q tol = pow2_neg(30);
    int bad = 0, tried = 0;
    const auto ids = cs.set.ids();
    for (int i = 0; i < 200 && !ids.empty(); ++i) {
        const int id = ids[static_cast<std::size_t>(rng.integer(0, static_cast<long>(ids.size()) - 1))];
        const Vec x = rng.interior(k.points(id));
        try {
            IVec y = r.pull.apply(push_point(r.push, x));
            bad += !contains(y, x) || max_width(y) > tol;
            ++tried;
            if (r.set.member(x)) {
                IVec z = r.push.apply(pull_point(r.pull, x));
                bad += !contains(z, x) || max_width(z) > tol;
            }
        } catch (const Error& e) {
            ++bad;
        }
    }
    c.add(p + "round_trip", bad == 0 && tried > 0, std::to_string(bad) + " of " + std::to_string(tried) + " failed");

    if (r.set.tubes().empty() || c.opt.probe_count <= 0) return;
    auto run_probes = [&](int samples, std::uint64_t seed, int& disconnected, int& obstructions) {
        auto qs = frontier_samples(r.set, c.opt.probe_count, seed);
        for (std::size_t i = 0; i < qs.size(); ++i) {
            ProbeReport rep = probe_germ(r.set, qs[i], probe_radius(r.set, qs[i]), samples, 100 + i);
            disconnected += rep.verdict == GermVerdict::Disconnected;
            obstructions += rep.obstruction();
        }
        return static_cast<int>(qs.size());
    };
    int dis = 0, obs = 0;
    int n = run_probes(48, 7, dis, obs);
    c.add(p + "probe_connected", n == c.opt.probe_count && dis == 0 && obs == 0,
          std::to_string(dis) + " disconnected, " + std::to_string(obs) + " obstructions in " + std::to_string(n));
    if (c.opt.probe) {
        dis = obs = 0;
        n = run_probes(192, 7, dis, obs);
        c.add(p + "probe_connected_4x", dis == 0 && obs == 0,
              std::to_string(dis) + " disconnected, " + std::to_string(obs) + " obstructions in " + std::to_string(n));
    }
}

void extend_suite(Ctx& c, const io::Case& cs) {
    const Complex& k = *cs.set.complex();
    for (const auto& [name, f] : cs.functions) {
        const std::string p = "extend." + cs.name + "." + name + ".";
        const Json fj = cs.raw.at("functions").at(name);
        ExtensionReport r = weak_extension(f);
        if (f.is_pl())
            c.add(p + "oracle_equivalence", limit_tuples(f, r) == graph_closure_oracle(f).boundary_fibers);
        if (!fj.contains("expect")) continue;
        const Json& want = fj.at("expect");
        const Json got = extend(f);
        for (const char* key : {"Y", "hypothesis_failures", "discontinuities", "dim2", "hypothesis_holds"})
            if (want.contains(key)) expect_eq(c, p + key, got.at(key), want.at(key));
        if (want.contains("face_values"))
            for (const auto& fv : want.at("face_values")) {
                const int face = io::simplex_ids(k, Json::array({fv.at("face")}))[0];
                const FaceLimits* fl = r.limits_at(face);
                Json g;
                if (fl && fl->value)
                    if (auto vv = fl->value->vertex_values(k)) g = to_json(*vv);
                expect_eq(c, p + "face" + dump(fv.at("face")), g, fv.at("vertex_values"));
            }
        if (want.contains("G"))
            for (const auto& gv : want.at("G")) {
                auto v = r.G(f, io::vec_from(gv.at("point")));
                expect_eq(c, p + "G" + dump(gv.at("point")), v ? to_json(*v) : Json(), gv.at("value"));
            }
    }
    if (cs.expect.contains("random_pl")) {
        const int count = cs.expect.at("random_pl").get<int>();
        Rng rng(5);
        int bad = 0;
        for (int i = 0; i < count; ++i) {
            Vec vals(k.vertices().size());
            for (auto& v : vals) v = rng.rational(-3, 3, 8);
            PLFFunction f = pl_from_vertex_values(cs.set, vals);
            try {
                ExtensionReport r = dim2_extension(f);
                bool ok = r.Y.empty() && limit_tuples(f, r) == graph_closure_oracle(f).boundary_fibers;
                for (int id : cs.set.ids()) {
                    Vec x = rng.interior(k.points(id));
                    ok = ok && r.G(f, x) == std::optional<Q>(f.eval(x));
                }
                bad += !ok;
            } catch (const Error&) {
                ++bad;
            }
        }
        c.add("extend." + cs.name + ".random_pl", bad == 0, std::to_string(bad) + " of " + std::to_string(count) + " failed");
    }
}

void homlab_suite(Ctx& c, const io::Case& cs) {
    const std::string p = "homlab." + cs.name + ".";
    auto path = [&](const std::string& n) -> const PathGerm& {
        auto it = cs.paths.find(n);
        if (it == cs.paths.end()) throw Error(ErrorKind::ParseError, "unknown path " + n);
        return it->second;
    };
    auto function = [&](const std::string& n) -> const PLFFunction& {
        auto it = cs.functions.find(n);
        if (it == cs.functions.end()) throw Error(ErrorKind::ParseError, "unknown function " + n);
        return it->second;
    };
    if (cs.expect.contains("evals"))
        for (const auto& e : cs.expect.at("evals")) {
            const std::string fn = e.at("function"), pn = e.at("path");
            const std::string name = p + "eval." + fn + "." + pn;
            Json got;
            try {
                got = eval(function(fn), path(pn)).at("value");
            } catch (const Error& err) {
                got = error_kind_name(err.kind());
            }
            expect_eq(c, name, got, e.contains("value") ? e.at("value") : e.at("error"));
        }
    if (cs.expect.contains("witness")) {
        const Json& w = cs.expect.at("witness");
        const Complex& k = *cs.set.complex();
        const int tau = io::simplex_ids(k, Json::array({w.at("tau")}))[0];
        const int sigma = io::simplex_ids(k, Json::array({w.at("sigma")}))[0];
        try {
            HomWitness h = distinct_homs_witness(cs.set, tau, sigma, io::vec_from(w.at("q1")), io::vec_from(w.at("q2")),
                                                 path(w.at("path")));
            c.add(p + "witness", is_zero_germ(h.psi1) && !is_zero_germ(h.psi2) && same_core(h.core1, h.core2),
                  "psi1 = " + to_string(h.psi1) + ", psi2 = " + to_string(h.psi2));
        } catch (const Error& e) {
            c.add(p + "witness", false, e.what());
        }
    }
}

} // namespace

RunManifest verify(const std::vector<io::Case>& cases, const std::vector<std::string>& suites, const Options& opt) {
    for (const auto& s : suites)
        if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
            throw Error(ErrorKind::PreconditionViolated, "unknown suite " + s);
    auto on = [&](const char* s) { return std::find(suites.begin(), suites.end(), s) != suites.end(); };

    struct Task {
        std::string label;
        std::function<void(Ctx&)> run;
    };
    std::vector<Task> tasks;
    if (on("exact")) tasks.push_back({"exact", exact_suite});
    if (on("metric")) tasks.push_back({"metric", metric_suite});
    for (const auto& cs : cases) {
        const io::Case* p = &cs;
        if (on("core")) tasks.push_back({"core." + cs.name, [p](Ctx& c) { core_suite(c, *p); }});
        if (on("tube")) tasks.push_back({"tube." + cs.name, [p](Ctx& c) { tube_suite(c, *p); }});
        if (on("carve")) tasks.push_back({"carve." + cs.name, [p](Ctx& c) { carve_suite(c, *p); }});
        if (on("extend")) tasks.push_back({"extend." + cs.name, [p](Ctx& c) { extend_suite(c, *p); }});
        if (on("homlab")) tasks.push_back({"homlab." + cs.name, [p](Ctx& c) { homlab_suite(c, *p); }});
    }

    std::vector<Ctx> results;
    results.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) results.push_back(Ctx{opt, {}, {}});
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < tasks.size();) {
            try {
                tasks[i].run(results[i]);
            } catch (const std::exception& e) {
                results[i].add(tasks[i].label + ".error", false, e.what());
            }
        }
    };
    const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    RunManifest m;
    m.command = "verify";
    m.bits = opt.bits;
    m.suites = suites;
    for (const auto& cs : cases) m.inputs.emplace_back(cs.file, cs.sha256);
    for (auto& r : results) {
        for (auto& ch : r.checks) m.checks.push_back(std::move(ch));
        for (auto& id : r.certs) m.certificates.push_back(std::move(id));
    }
    return m;
}

} // namespace saet::shell
