// gridpart command-line front end: solve, generate and verify grid instances.
//
// Exit codes: 0 success/PASS, 1 verification FAIL, 2 usage or input error,
// 3 capability error (instance outside what the requested solver handles).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridpart/bcp_approx.hpp"
#include "gridpart/bcp_exact.hpp"
#include "gridpart/bcp_fptas.hpp"
#include "gridpart/grid.hpp"
#include "gridpart/nsp.hpp"
#include "gridpart/oracle.hpp"

using gridpart::GridGraph;
using gridpart::NodeId;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapability = 3;

GridGraph load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gridpart::ParseError("cannot open grid file: " + path);
    return gridpart::parse_grid(in);
}

NodeId parse_coord(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 >= text.size())
        throw gridpart::ParseError("coordinate must be R,C: " + text);
    try {
        int r = std::stoi(text.substr(0, comma));
        int c = std::stoi(text.substr(comma + 1));
        return NodeId{r, c};
    } catch (const std::exception&) {
        throw gridpart::ParseError("coordinate must be R,C: " + text);
    }
}

// decimal string -> exact rational, e.g. "0.25" -> 1/4
std::pair<std::uint64_t, std::uint64_t> parse_epsilon(const std::string& text) {
    std::size_t dot = text.find('.');
    std::string whole = dot == std::string::npos ? text : text.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw gridpart::ParseError("bad epsilon: " + text);
    for (char ch : whole + frac)
        if (ch < '0' || ch > '9') throw gridpart::ParseError("bad epsilon: " + text);
    if (frac.size() > 18) throw gridpart::ParseError("epsilon has too many digits: " + text);
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::uint64_t num = 0;
    for (char ch : whole + frac) num = num * 10 + static_cast<std::uint64_t>(ch - '0');
    if (num == 0) throw gridpart::ParseError("epsilon must be positive");
    std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

json coord_json(NodeId v) { return json::array({v.row, v.col}); }

json path_json(const std::vector<NodeId>& nodes) {
    json arr = json::array();
    for (NodeId v : nodes) arr.push_back(coord_json(v));
    return arr;
}

void require_in_bounds(const GridGraph& g, NodeId v, const char* name) {
    if (!g.in_bounds(v))
        throw gridpart::ParseError(std::string(name) + " " + gridpart::to_string(v) + " out of range");
}

int run_nsp(const std::string& grid_file, const std::string& source, const std::string& target,
            bool connector) {
    GridGraph g = load_grid(grid_file);
    NodeId s = parse_coord(source), t = parse_coord(target);
    require_in_bounds(g, s, "source");
    require_in_bounds(g, t, "target");

    json rec;
    if (!connector) {
        gridpart::NspResult r = gridpart::min_nonseparating_path(g, s, t);
        if (!gridpart::removal_keeps_connected(g, r.path.nodes))
            throw std::logic_error("solver output failed the non-separation validator");
        rec["weight"] = r.weight;
        rec["path"] = path_json(r.path.nodes);
    } else {
        gridpart::NspResult r = gridpart::min_nsc(g, s, t);
        rec["weight"] = r.weight;
        if (r.kind == gridpart::NscKind::Path) {
            if (!gridpart::removal_keeps_connected(g, r.path.nodes))
                throw std::logic_error("solver output failed the non-separation validator");
            rec["kind"] = "path";
            rec["nodes"] = path_json(r.path.nodes);
        } else {
            rec["kind"] = "whole-minus-corner";
            rec["excluded_corner"] = coord_json(r.excluded_corner);
            rec["nodes"] = path_json(r.node_set);
        }
    }
    std::cout << rec.dump() << "\n";
    return 0;
}

int run_bcp(const std::string& grid_file, const std::string& algorithm, const std::string& epsilon) {
    GridGraph g = load_grid(grid_file);
    gridpart::Bipartition b;
    if (algorithm == "approx") {
        b = gridpart::approx_bcp2(g);
    } else if (algorithm == "exact") {
        b = gridpart::exact_bcp2(g).bipartition;
    } else if (algorithm == "fptas") {
        if (epsilon.empty()) throw gridpart::ParseError("fptas requires --epsilon");
        auto [en, ed] = parse_epsilon(epsilon);
        b = gridpart::fptas_bcp2(g, en, ed);
    } else {
        throw gridpart::ParseError("unknown algorithm: " + algorithm);
    }
    if (!gridpart::validate_bipartition(g, b))
        throw std::logic_error("solver output failed the bipartition validator");

    json rec;
    rec["balance"] = b.balance();
    rec["weight0"] = b.weight0;
    rec["weight1"] = b.weight1;
    json mask = json::array();
    for (int r = 1; r <= g.rows(); ++r) {
        std::string row(static_cast<std::size_t>(g.cols()), '0');
        for (int c = 1; c <= g.cols(); ++c)
            if (b.side_of(NodeId{r, c})) row[static_cast<std::size_t>(c - 1)] = '1';
        mask.push_back(row);
    }
    rec["mask"] = mask;
    std::cout << rec.dump() << "\n";
    return 0;
}

// Deterministic instance generator: weights are 1 + (x mod K) where x is the
// raw output stream of std::mt19937_64 seeded with S, consumed row-major.
int run_gen(long long rows, long long cols, long long max_weight, std::uint64_t seed) {
    if (rows < 1 || cols < 1 || max_weight < 1)
        throw gridpart::ParseError("rows, cols and max-weight must be >= 1");
    if (rows * cols > (1LL << 28)) throw gridpart::ParseError("grid too large");
    std::mt19937_64 eng(seed);
    std::ostringstream out;
    out << rows << ' ' << cols << '\n';
    for (long long r = 0; r < rows; ++r) {
        for (long long c = 0; c < cols; ++c) {
            if (c) out << ' ';
            out << 1 + eng() % static_cast<std::uint64_t>(max_weight);
        }
        out << '\n';
    }
    std::cout << out.str();
    return 0;
}

int run_verify(const std::string& grid_file, const std::vector<std::string>& nsp_coords, bool bcp,
               bool brute) {
    GridGraph g = load_grid(grid_file);
    bool pass = true;

    if (!nsp_coords.empty()) {
        NodeId s = parse_coord(nsp_coords[0]), t = parse_coord(nsp_coords[1]);
        require_in_bounds(g, s, "source");
        require_in_bounds(g, t, "target");
        gridpart::NspResult r = gridpart::min_nonseparating_path(g, s, t);
        bool valid = gridpart::removal_keeps_connected(g, r.path.nodes);
        if (!gridpart::two_cut_corner(g, s, t)) {
            valid = valid && gridpart::is_induced_path(g, r.path);
            valid = valid && gridpart::boundary_subpath_count(g, r.path) <= 1;
        }
        std::cout << "solver weight=" << r.weight << " valid=" << (valid ? "yes" : "no") << "\n";
        pass = pass && valid;
        if (g.node_count() <= 25) {
            auto want = gridpart::oracle::brute_min_nonseparating_path(g, s, t);
            bool match = want.has_value() && want->weight == r.weight;
            std::cout << "oracle weight=" << (want ? std::to_string(want->weight) : "none")
                      << " match=" << (match ? "yes" : "no") << "\n";
            pass = pass && match;
        } else if (brute) {
            throw gridpart::ParseError("instance too large for oracle");
        } else {
            std::cout << "oracle skipped (instance too large)\n";
        }
    } else if (bcp) {
        gridpart::DpResult r = gridpart::exact_bcp2(g);
        bool valid = gridpart::validate_bipartition(g, r.bipartition);
        std::cout << "solver balance=" << r.balance << " valid=" << (valid ? "yes" : "no") << "\n";
        pass = pass && valid;
        if (g.node_count() <= 20) {
            auto want = gridpart::oracle::brute_bcp2(g);
            bool match = want.balance == r.balance;
            std::cout << "oracle balance=" << want.balance << " match=" << (match ? "yes" : "no")
                      << "\n";
            pass = pass && match;
        } else if (brute) {
            throw gridpart::ParseError("instance too large for oracle");
        } else {
            std::cout << "oracle skipped (instance too large)\n";
        }
    } else {
        throw gridpart::ParseError("verify needs --nsp or --bcp");
    }

    std::cout << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum non-separating paths and balanced connected bipartitions on grids"};
    app.require_subcommand(1);

    std::string grid_file, source, target, algorithm, epsilon;
    bool connector = false, bcp_flag = false, brute = false;
    long long rows = 0, cols = 0, max_weight = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> nsp_coords;

    CLI::App* nsp = app.add_subcommand("nsp", "minimum non-separating path between two nodes");
    nsp->add_option("--grid", grid_file, "grid instance file")->required();
    nsp->add_option("--source", source, "source node R,C")->required();
    nsp->add_option("--target", target, "target node R,C")->required();
    nsp->add_flag("--connector", connector, "solve the minimum non-separating connector instead");

    CLI::App* bcp = app.add_subcommand("bcp", "maximum balanced connected bipartition");
    bcp->add_option("--grid", grid_file, "grid instance file")->required();
    bcp->add_option("--algorithm", algorithm, "approx | exact | fptas")->required();
    bcp->add_option("--epsilon", epsilon, "approximation parameter for fptas");

    CLI::App* gen = app.add_subcommand("gen", "generate a deterministic random instance");
    gen->add_option("--rows", rows, "row count")->required();
    gen->add_option("--cols", cols, "column count")->required();
    gen->add_option("--max-weight", max_weight, "weights are uniform in 1..K")->required();
    gen->add_option("--seed", seed, "PRNG seed")->required();

    CLI::App* verify = app.add_subcommand("verify", "run a solver against its oracle");
    verify->add_option("--grid", grid_file, "grid instance file")->required();
    verify->add_option("--nsp", nsp_coords, "source and target R,C R,C")->expected(2);
    verify->add_flag("--bcp", bcp_flag, "verify the exact bipartition solver");
    verify->add_flag("--brute", brute, "require the oracle comparison");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (nsp->parsed()) return run_nsp(grid_file, source, target, connector);
        if (bcp->parsed()) return run_bcp(grid_file, algorithm, epsilon);
        if (gen->parsed()) return run_gen(rows, cols, max_weight, seed);
        if (verify->parsed()) return run_verify(grid_file, nsp_coords, bcp_flag, brute);
    } catch (const gridpart::CapabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapability;
    } catch (const gridpart::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
