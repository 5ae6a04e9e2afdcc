#include "saet/errors.hpp"
#include "saet/shell.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <sstream>

using namespace saet;
using shell::Json;

namespace {

struct Common {
    unsigned bits = kDefaultBits;
    bool probe = false;
    int probe_count = 48;
    int jobs = 1;
    std::string out;

    shell::Options options() const { return {bits, probe, probe_count, jobs}; }
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--precision", c.bits, "interval precision in bits")->check(CLI::Range(8u, 4096u));
    app->add_option("--out", c.out, "output file (default stdout)");
    app->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) std::cout << text;
    else io::write_file(c.out, text);
}

const PLFFunction& pick_function(const io::Case& cs, const std::string& name) {
    if (name.empty()) {
        if (cs.functions.size() != 1) throw CLI::ValidationError("--function", "needed: file has " + std::to_string(cs.functions.size()) + " functions");
        return cs.functions.begin()->second;
    }
    auto it = cs.functions.find(name);
    if (it == cs.functions.end()) throw CLI::ValidationError("--function", "no function named " + name);
    return it->second;
}

PathGerm pick_path(const io::Case& cs, const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return io::path_from(Json::parse(arg));
    auto it = cs.paths.find(arg);
    if (it == cs.paths.end()) throw CLI::ValidationError("--path", "no path named " + arg);
    return it->second;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ',');)
        if (!part.empty()) out.push_back(part);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"saet: semialgebraic extension toolkit"};
    app.require_subcommand(1);
    Common common;
    std::string input, function, path, what = "mesh", corpus = "corpus", suites = "all";
    int grid = 64;

    auto* analyze = app.add_subcommand("analyze", "germ analysis of a set");
    auto* carve = app.add_subcommand("carve", "carve the obstruction set away");
    auto* extend = app.add_subcommand("extend", "weak continuous extension of a function");
    auto* eval = app.add_subcommand("eval", "evaluate a function along a path germ");
    auto* verify = app.add_subcommand("verify", "run the invariant suite on the corpus");
    auto* exp = app.add_subcommand("export", "write OFF/OBJ geometry");
    for (auto* sub : {analyze, carve, extend, eval, exp}) {
        sub->add_option("input", input, "case file (JSON)")->required()->check(CLI::ExistingFile);
        add_common(sub, common);
    }
    add_common(verify, common);
    for (auto* sub : {carve, verify}) {
        sub->add_flag("--probe", common.probe, "probe germs on the carved frontier (verify: add a 4x density pass)");
        sub->add_option("--probe-count", common.probe_count, "frontier samples to probe");
    }
    for (auto* sub : {extend, eval, exp}) sub->add_option("--function", function, "function name in the case file");
    eval->add_option("--path", path, "path name in the case file, or inline path JSON")->required();
    verify->add_option("--corpus", corpus, "corpus directory")->check(CLI::ExistingDirectory);
    verify->add_option("--suites", suites, "comma separated suites, 'all', or empty for none");
    exp->add_option("--what", what, "mesh | tubes | carved | extension")
        ->check(CLI::IsMember({"mesh", "tubes", "carved", "extension"}));
    exp->add_option("--grid", grid, "raster resolution")->check(CLI::Range(2, 1024));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            auto t0 = std::chrono::steady_clock::now();
            std::vector<std::string> sel = suites == "all" ? shell::all_suites() : split(suites);
            for (const auto& name : sel)
                if (std::find(shell::all_suites().begin(), shell::all_suites().end(), name) == shell::all_suites().end())
                    throw CLI::ValidationError("--suites", "unknown suite " + name);
            shell::RunManifest m = shell::verify(shell::load_corpus(corpus), sel, common.options());
            m.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            emit(common, m.json().dump(2) + "\n");
            for (const auto& c : m.checks)
                if (!c.pass) std::cerr << "FAIL " << c.name << ": " << c.detail << "\n";
            std::cerr << m.checks.size() << " checks, " << (m.passed() ? "all passed" : "failures") << ", "
                      << static_cast<long>(m.wall_ms) << " ms\n";
            return m.passed() ? 0 : 1;
        }

        io::Case cs = io::load_case(input);
        if (*analyze) emit(common, shell::analyze(cs.set).dump(2) + "\n");
        if (*carve) emit(common, shell::carve(cs.set, common.options()).dump(2) + "\n");
        if (*extend) emit(common, shell::extend(pick_function(cs, function)).dump(2) + "\n");
        if (*eval) emit(common, shell::eval(pick_function(cs, function), pick_path(cs, path)).dump(2) + "\n");
        if (*exp) {
            if (what == "mesh") emit(common, shell::export_mesh_off(cs.set));
            if (what == "tubes") {
                if (cs.tubes.empty()) throw CLI::ValidationError("--what", "case file has no tubes");
                std::string all;
                for (const auto& [name, t] : cs.tubes) all += "o " + name + "\n" + shell::export_tube_obj(t, grid);
                emit(common, all);
            }
            if (what == "carved")
                emit(common, shell::export_carved_obj(appropriate_embed(cs.set, common.bits).set, grid));
            if (what == "extension") emit(common, shell::export_extension_obj(pick_function(cs, function), 8));
        }
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.kind() == ErrorKind::ParseError ? 2 : 1;
    } catch (const Json::exception& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return 2;
    }
}
