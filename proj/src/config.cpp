#include "hemo/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "hemo/errors.hpp"
#include "hemo/physics.hpp"

namespace hemo {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& ctx, const std::string& what) {
    throw ConfigError(ctx + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key)) fail(ctx, std::string("missing key '") + key + "'");
    return j.at(key);
}

double need_num(const json& j, const char* key, const std::string& ctx) {
    const json& v = need(j, key, ctx);
    if (!v.is_number()) fail(ctx, std::string("'") + key + "' must be a number");
    return v.get<double>();
}

double opt_num(const json& j, const char* key, double def, const std::string& ctx) {
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_number()) fail(ctx, std::string("'") + key + "' must be a number");
    return v.get<double>();
}

long need_int(const json& j, const char* key, const std::string& ctx) {
    const json& v = need(j, key, ctx);
    if (!v.is_number_integer()) fail(ctx, std::string("'") + key + "' must be an integer");
    return v.get<long>();
}

std::string need_str(const json& j, const char* key, const std::string& ctx) {
    const json& v = need(j, key, ctx);
    if (!v.is_string()) fail(ctx, std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<double> num_list(const json& v, const std::string& ctx) {
    if (!v.is_array()) fail(ctx, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) fail(ctx, "expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
    if (!j.is_object()) fail(ctx, "expected an object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                ok = true;
                break;
            }
        if (!ok) fail(ctx, "unknown key '" + item.key() + "'");
    }
}

TimeFunction parse_datum(const json& j, const std::string& ctx) {
    const bool has_value = j.contains("value");
    const bool has_sin = j.contains("amplitude") || j.contains("frequency");
    const bool has_tab = j.contains("times") || j.contains("values");
    if (has_value + has_sin + has_tab != 1)
        fail(ctx, "give exactly one datum: 'value', 'amplitude'+'frequency', or 'times'+'values'");
    if (has_value) return TimeFunction::constant(need_num(j, "value", ctx));
    if (has_sin)
        return TimeFunction::sinusoidal(need_num(j, "amplitude", ctx),
                                        need_num(j, "frequency", ctx));
    return TimeFunction::tabulated(num_list(need(j, "times", ctx), ctx + ".times"),
                                   num_list(need(j, "values", ctx), ctx + ".values"));
}

void fill_initial(const json& init, const Grid& g, const VesselParams& p,
                  ModelForm form, std::vector<double>& A, std::vector<double>& Q,
                  const std::string& ctx) {
    const std::string type = need_str(init, "type", ctx);
    A.resize(g.n_cells);
    Q.resize(g.n_cells);
    auto second = [&](const json& j, double def) {
        // "Q" names the flow, "u" the velocity; either key sets the stored
        // second variable of the chosen form.
        if (j.contains("u")) {
            if (form != ModelForm::Velocity) fail(ctx, "'u' initial data needs the velocity form");
            return need_num(j, "u", ctx);
        }
        return opt_num(j, "Q", def, ctx);
    };
    if (type == "constant") {
        check_keys(init, {"type", "A", "Q", "u"}, ctx);
        const double a = opt_num(init, "A", p.A0, ctx);
        const double q = second(init, 0.0);
        for (std::size_t i = 0; i < g.n_cells; ++i) {
            A[i] = a;
            Q[i] = q;
        }
    } else if (type == "gaussian_area") {
        check_keys(init, {"type", "amplitude", "center", "decay", "Q", "u"}, ctx);
        const double amp = opt_num(init, "amplitude", 1.0, ctx);
        const double center = need_num(init, "center", ctx);
        const double decay = need_num(init, "decay", ctx);
        const double q = second(init, 0.0);
        for (std::size_t i = 0; i < g.n_cells; ++i) {
            const double x = g.cell_center(i);
            A[i] = p.A0 + amp * std::exp(-decay * (x - center) * (x - center));
            Q[i] = q;
        }
    } else if (type == "tabulated") {
        check_keys(init, {"type", "x", "A", "Q", "u"}, ctx);
        const auto xs = num_list(need(init, "x", ctx), ctx + ".x");
        const auto as = num_list(need(init, "A", ctx), ctx + ".A");
        if (xs.size() < 2 || xs.size() != as.size())
            fail(ctx, "'x' and 'A' must be equal-length arrays of at least two samples");
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1])) fail(ctx, "'x' must be strictly increasing");
        std::vector<double> qs(xs.size(), 0.0);
        if (init.contains("Q") || init.contains("u")) {
            const char* key = init.contains("u") ? "u" : "Q";
            if (init.contains("u") && form != ModelForm::Velocity)
                fail(ctx, "'u' initial data needs the velocity form");
            qs = num_list(init.at(key), ctx + "." + key);
            if (qs.size() != xs.size()) fail(ctx, "flow samples must match 'x'");
        }
        auto interp = [&](const std::vector<double>& ys, double x) {
            if (x <= xs.front()) return ys.front();
            if (x >= xs.back()) return ys.back();
            std::size_t k = 1;
            while (xs[k] < x) ++k;
            const double w = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
            return ys[k - 1] + w * (ys[k] - ys[k - 1]);
        };
        for (std::size_t i = 0; i < g.n_cells; ++i) {
            const double x = g.cell_center(i);
            A[i] = interp(as, x);
            Q[i] = interp(qs, x);
        }
    } else {
        fail(ctx, "unknown initial type '" + type + "'");
    }
}

BoundarySpec parse_boundary(const json& j, const std::string& ctx) {
    check_keys(j,
               {"edge", "side", "type", "value", "amplitude", "frequency", "times",
                "values", "valve"},
               ctx);
    const std::string type = need_str(j, "type", ctx);
    BoundarySpec spec;
    using K = BoundarySpec::Kind;
    const std::map<std::string, K> kinds = {
        {"neumann", K::Neumann},
        {"non_reflecting", K::NonReflecting},
        {"non_reflecting_order2", K::NonReflectingOrder2},
        {"pressure", K::PrescribedPressure},
        {"velocity", K::PrescribedVelocity},
        {"flow", K::PrescribedFlow},
        {"reflecting", K::Reflecting},
        {"heart_valve", K::HeartValve},
    };
    const auto it = kinds.find(type);
    if (it == kinds.end()) fail(ctx, "unknown boundary type '" + type + "'");
    spec.kind = it->second;
    const bool needs_datum = spec.kind == K::PrescribedPressure ||
                             spec.kind == K::PrescribedVelocity ||
                             spec.kind == K::PrescribedFlow || spec.kind == K::HeartValve;
    if (needs_datum) {
        spec.datum = parse_datum(j, ctx);
    } else if (j.contains("value") || j.contains("amplitude") || j.contains("times")) {
        fail(ctx, "boundary type '" + type + "' takes no datum");
    }
    if (j.contains("valve")) {
        if (spec.kind != K::HeartValve) fail(ctx, "'valve' only applies to heart_valve");
        const json& v = j.at("valve");
        check_keys(v, {"period", "open_fraction", "phase"}, ctx + ".valve");
        spec.valve.period = need_num(v, "period", ctx + ".valve");
        spec.valve.open_fraction = need_num(v, "open_fraction", ctx + ".valve");
        spec.valve.phase = opt_num(v, "phase", 0.0, ctx + ".valve");
        if (!(spec.valve.period > 0.0)) fail(ctx + ".valve", "'period' must be positive");
        if (spec.valve.open_fraction < 0.0 || spec.valve.open_fraction > 1.0)
            fail(ctx + ".valve", "'open_fraction' must lie in [0, 1]");
    }
    return spec;
}

LoadedConfig build(const json& root, const std::string& origin) {
    check_keys(root, {"edges", "junctions", "boundaries", "run"}, origin);

    const json& jedges = need(root, "edges", origin);
    if (!jedges.is_array() || jedges.empty()) fail(origin, "'edges' must be a nonempty array");

    std::vector<Edge> edges;
    std::map<int, int> id_to_index;
    for (std::size_t i = 0; i < jedges.size(); ++i) {
        const std::string ctx = origin + ".edges[" + std::to_string(i) + "]";
        const json& je = jedges[i];
        check_keys(je,
                   {"id", "length", "n_cells", "x_left", "A0", "rho", "alpha", "mu",
                    "gamma", "Pext", "E", "h0", "nu", "beta", "form", "initial"},
                   ctx);
        Edge e;
        e.id = static_cast<int>(need_int(je, "id", ctx));
        if (!id_to_index.emplace(e.id, static_cast<int>(i)).second)
            fail(ctx, "duplicate edge id " + std::to_string(e.id));

        e.grid.x_left = opt_num(je, "x_left", 0.0, ctx);
        e.grid.length = need_num(je, "length", ctx);
        const long nc = need_int(je, "n_cells", ctx);
        if (nc <= 0) fail(ctx, "'n_cells' must be positive");
        e.grid.n_cells = static_cast<std::size_t>(nc);

        const double A0 = need_num(je, "A0", ctx);
        const double rho = need_num(je, "rho", ctx);
        const double alpha = opt_num(je, "alpha", 1.0, ctx);
        const double mu = opt_num(je, "mu", 0.0, ctx);
        const double gamma = opt_num(je, "gamma", 0.0, ctx);
        const double Pext = opt_num(je, "Pext", 0.0, ctx);
        const bool wall = je.contains("E") || je.contains("h0") || je.contains("nu");
        const bool direct = je.contains("beta");
        if (wall == direct)
            fail(ctx, "give the wall data (E, h0, nu) or 'beta', not both or neither");
        try {
            if (wall)
                e.params = make_vessel_params(need_num(je, "E", ctx), need_num(je, "h0", ctx),
                                              need_num(je, "nu", ctx), A0, rho, alpha, mu,
                                              gamma, Pext);
            else
                e.params = vessel_params_from_beta(need_num(je, "beta", ctx), A0, rho, alpha,
                                                   mu, gamma, Pext);
        } catch (const std::invalid_argument& ex) {
            fail(ctx, ex.what());
        }

        if (je.contains("form")) {
            const std::string f = need_str(je, "form", ctx);
            if (f == "flow")
                e.form = ModelForm::Flow;
            else if (f == "velocity")
                e.form = ModelForm::Velocity;
            else
                fail(ctx, "unknown form '" + f + "'");
        }

        std::vector<double> A, Q;
        const json& init = need(je, "initial", ctx);
        fill_initial(init, e.grid, e.params, e.form, A, Q, ctx + ".initial");
        try {
            e.state = make_edge_state(e.form, e.params, std::move(A), std::move(Q));
        } catch (const std::exception& ex) {
            fail(ctx + ".initial", ex.what());
        }
        edges.push_back(std::move(e));
    }

    std::vector<Junction> junctions;
    if (root.contains("junctions")) {
        const json& jj = root.at("junctions");
        if (!jj.is_array()) fail(origin, "'junctions' must be an array");
        for (std::size_t i = 0; i < jj.size(); ++i) {
            const std::string ctx = origin + ".junctions[" + std::to_string(i) + "]";
            const json& j = jj[i];
            check_keys(j, {"type", "parent", "child", "children"}, ctx);
            Junction jn;
            const std::string type = need_str(j, "type", ctx);
            auto lookup = [&](long id) {
                const auto it = id_to_index.find(static_cast<int>(id));
                if (it == id_to_index.end())
                    fail(ctx, "unknown edge id " + std::to_string(id));
                return it->second;
            };
            jn.parent = lookup(need_int(j, "parent", ctx));
            if (type == "one_to_one") {
                jn.kind = Junction::Kind::OneToOne;
                jn.child1 = lookup(need_int(j, "child", ctx));
            } else if (type == "one_to_two") {
                jn.kind = Junction::Kind::OneToTwo;
                const json& ch = need(j, "children", ctx);
                if (!ch.is_array() || ch.size() != 2 || !ch[0].is_number_integer() ||
                    !ch[1].is_number_integer())
                    fail(ctx, "'children' must be an array of two edge ids");
                jn.child1 = lookup(ch[0].get<long>());
                jn.child2 = lookup(ch[1].get<long>());
            } else {
                fail(ctx, "unknown junction type '" + type + "'");
            }
            junctions.push_back(jn);
        }
    }

    const json& jrun = need(root, "run", origin);
    const std::string rctx = origin + ".run";
    check_keys(jrun,
               {"cfl", "order", "t_end", "epsilon", "lambda", "snapshot_times",
                "output_dir", "bc_beta_over_A0"},
               rctx);
    RunSettings rs;
    rs.cfl = opt_num(jrun, "cfl", 1.0, rctx);
    rs.scheme_order = static_cast<int>(jrun.contains("order") ? need_int(jrun, "order", rctx) : 1);
    rs.t_end = need_num(jrun, "t_end", rctx);
    rs.epsilon = opt_num(jrun, "epsilon", 0.0, rctx);
    if (jrun.contains("lambda"))
        rs.lambda_policy = LambdaPolicy::fixed(need_num(jrun, "lambda", rctx));
    if (jrun.contains("snapshot_times"))
        rs.snapshot_times = num_list(jrun.at("snapshot_times"), rctx + ".snapshot_times");
    if (jrun.contains("bc_beta_over_A0")) {
        const json& v = jrun.at("bc_beta_over_A0");
        if (!v.is_boolean()) fail(rctx, "'bc_beta_over_A0' must be a boolean");
        rs.bc_beta_over_A0 = v.get<bool>();
    }
    std::string output_dir;
    if (jrun.contains("output_dir")) output_dir = need_str(jrun, "output_dir", rctx);

    // Non-junction ends need an explicit boundary law.
    std::vector<std::pair<bool, bool>> have_bc(edges.size(), {false, false});
    if (root.contains("boundaries")) {
        const json& jb = root.at("boundaries");
        if (!jb.is_array()) fail(origin, "'boundaries' must be an array");
        for (std::size_t i = 0; i < jb.size(); ++i) {
            const std::string ctx = origin + ".boundaries[" + std::to_string(i) + "]";
            const json& j = jb[i];
            const long id = need_int(j, "edge", ctx);
            const auto it = id_to_index.find(static_cast<int>(id));
            if (it == id_to_index.end()) fail(ctx, "unknown edge id " + std::to_string(id));
            const std::string side = need_str(j, "side", ctx);
            const BoundarySpec spec = parse_boundary(j, ctx);
            if (side == "left") {
                if (have_bc[it->second].first) fail(ctx, "duplicate boundary for this end");
                edges[it->second].left_bc = spec;
                have_bc[it->second].first = true;
            } else if (side == "right") {
                if (have_bc[it->second].second) fail(ctx, "duplicate boundary for this end");
                edges[it->second].right_bc = spec;
                have_bc[it->second].second = true;
            } else {
                fail(ctx, "side must be 'left' or 'right'");
            }
        }
    }

    Network net(std::move(edges), std::move(junctions), rs);
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
        const Edge& e = net.edges[i];
        if (!e.left_is_junction && !have_bc[i].first)
            fail(origin, "edge " + std::to_string(e.id) + " has no left boundary");
        if (!e.right_is_junction && !have_bc[i].second)
            fail(origin, "edge " + std::to_string(e.id) + " has no right boundary");
        if (e.left_is_junction && have_bc[i].first)
            fail(origin, "edge " + std::to_string(e.id) + " has both a junction and a left boundary");
        if (e.right_is_junction && have_bc[i].second)
            fail(origin, "edge " + std::to_string(e.id) + " has both a junction and a right boundary");
    }
    try {
        net.validate();
    } catch (const std::invalid_argument& ex) {
        fail(origin, ex.what());
    }
    return LoadedConfig{std::move(net), output_dir};
}

}  // namespace

LoadedConfig load_config_text(const std::string& text, const std::string& origin,
                              const ConfigOverrides& ov) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& ex) {
        throw ConfigError(origin + ": " + ex.what());
    }
    if (root.is_object()) {
        if (ov.cells > 0 && root.contains("edges") && root["edges"].is_array()) {
            for (auto& je : root["edges"])
                if (je.is_object()) je["n_cells"] = ov.cells;
        }
        if (root.contains("run") && root["run"].is_object()) {
            if (ov.cfl >= 0.0) root["run"]["cfl"] = ov.cfl;
            if (ov.epsilon >= 0.0) root["run"]["epsilon"] = ov.epsilon;
        }
    }
    return build(root, origin);
}

LoadedConfig load_config_text(const std::string& text, const std::string& origin) {
    return load_config_text(text, origin, ConfigOverrides{});
}

LoadedConfig load_config_file(const std::string& path, const ConfigOverrides& ov) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_config_text(ss.str(), path, ov);
}

LoadedConfig load_config_file(const std::string& path) {
    return load_config_file(path, ConfigOverrides{});
}

}  // namespace hemo
