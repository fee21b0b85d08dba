#include "mcf/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "mcf/eos.hpp"
#include "mcf/util.hpp"

namespace mcf {

bool RegionSpec::contains(double x, double y) const {
    switch (shape) {
        case RegionShape::all: return true;
        case RegionShape::halfplane_x: return x >= xmin && x < xmax;
        case RegionShape::halfplane_y: return y >= ymin && y < ymax;
        case RegionShape::box: return x >= xmin && x < xmax && y >= ymin && y < ymax;
        case RegionShape::circle: return sq(x - cx) + sq(y - cy) <= sq(radius);
        case RegionShape::expdecay_x: return x >= xmin && x < xmax;
    }
    return false;
}

Grid CaseConfig::make_grid() const {
    if (dim == 1) return Grid::make_1d(nx, x0, x1, bc[0], bc[1]);
    return Grid::make_2d(nx, ny, x0, x1, y0, y1, bc);
}

void CaseConfig::validate() const {
    if (dim != 1 && dim != 2) throw ConfigError("config: dim must be 1 or 2");
    if (materials.empty()) throw ConfigError("config: no materials");
    if (materials.size() > 8) throw ConfigError("config: at most 8 phases supported");
    for (const auto& m : materials)
        if (!m.valid())
            throw ConfigError("config: material '" + m.name +
                              "' violates gamma>1, p_inf>=0, cv>0");
    if (regions.empty()) throw ConfigError("config: no regions");
    const std::size_t n = materials.size();
    for (const auto& r : regions) {
        if (r.alpha.size() != n) throw ConfigError("config: region alpha needs one entry per phase");
        double s = 0.0;
        for (double a : r.alpha) {
            const bool ok = (n == 1) ? (a == 1.0) : (a > 0.0 && a < 1.0);
            if (!ok) throw ConfigError("config: region alpha entries must lie in (0,1)");
            s += a;
        }
        if (std::abs(s - 1.0) > 1e-12) throw ConfigError("config: region alpha must sum to 1");
        if (r.init == RegionInit::by_density && r.rho.size() != n)
            throw ConfigError("config: region rho needs one entry per phase");
        if (r.init == RegionInit::by_temperature && !(r.T > 0.0))
            throw ConfigError("config: region temperature must be positive");
        if (r.init == RegionInit::by_ref_phase &&
            (r.ref_phase < 0 || r.ref_phase >= static_cast<int>(n) || !(r.rho_ref > 0.0)))
            throw ConfigError("config: region ref phase/density invalid");
        if (r.shape == RegionShape::expdecay_x && !(r.rho_ref_end > 0.0))
            throw ConfigError("config: expdecay region needs rho_ref_end > 0");
        if (r.profile == RegionProfile::cosine_x) {
            if (r.alpha_peak.size() != n || !(r.profile_width > 0.0))
                throw ConfigError("config: cosine profile needs alpha_peak per phase and a "
                                  "positive width");
            double sp = 0.0;
            for (double a : r.alpha_peak) sp += a;
            if (std::abs(sp - 1.0) > 1e-12)
                throw ConfigError("config: alpha_peak must sum to 1");
        }
    }
    if (physics.conduct && !physics.relax)
        throw ConfigError("config: heat conduction requires temperature relaxation "
                          "(equilibrium-temperature formulation)");
    if (physics.laser &&
        (!(laser.intensity > 0.0) || !(laser.depth > 0.0) || !(laser.rho_critical > 0.0)))
        throw ConfigError("config: laser switch set but laser parameters missing");
    if (!(solver.cfl > 0.0) || !(solver.cfl <= 1.0))
        throw ConfigError("config: cfl must lie in (0,1]");
    if (!(output.t_end >= 0.0)) throw ConfigError("config: t_end must be >= 0");
    for (double t : output.times)
        if (t < 0.0 || t > output.t_end)
            throw ConfigError("config: snapshot times must lie in [0, t_end]");

    // Region coverage: every cell center must be matched.
    Grid g = make_grid();
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            bool hit = false;
            for (const auto& r : regions)
                if (r.contains(g.xc(i), g.yc(j))) { hit = true; break; }
            if (!hit)
                throw ConfigError("config: cell (" + std::to_string(i - g.ng) + "," +
                                  std::to_string(j - g.ng) + ") not covered by any region");
        }
}

void init_fields(const CaseConfig& cfg, FlowField& U, PrimField& W) {
    const Grid g = cfg.make_grid();
    const int n = cfg.nphase();
    U = FlowField::allocate(g, n);
    W = PrimField::allocate(g, n);

    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            const double x = g.xc(i), y = g.yc(j);
            const RegionSpec* reg = nullptr;
            for (const auto& r : cfg.regions)
                if (r.contains(x, y)) reg = &r;
            const std::size_t c = g.idx(i, j);

            PrimitiveState w;
            w.rho.resize(n);
            w.alpha = reg->alpha;
            w.T.resize(n);
            w.e.resize(n);
            w.p = reg->p;
            w.vel[0] = reg->u;
            w.vel[1] = reg->v;

            if (reg->profile == RegionProfile::cosine_x &&
                std::abs(x - reg->profile_center) < 0.5 * reg->profile_width) {
                const double s =
                    sq(std::cos(std::numbers::pi * (x - reg->profile_center) /
                                reg->profile_width));
                for (int k = 0; k < n; ++k)
                    w.alpha[k] += s * (reg->alpha_peak[k] - reg->alpha[k]);
            }

            switch (reg->init) {
                case RegionInit::by_temperature:
                    for (int k = 0; k < n; ++k)
                        w.rho[k] = eos::sg_density_from_Tp(reg->T, w.p, cfg.materials[k]);
                    break;
                case RegionInit::by_density:
                    w.rho = reg->rho;
                    break;
                case RegionInit::by_ref_phase: {
                    double rr = reg->rho_ref;
                    if (reg->shape == RegionShape::expdecay_x) {
                        const double delta =
                            (reg->xmax - reg->xmin) / std::log(reg->rho_ref / reg->rho_ref_end);
                        rr = reg->rho_ref * std::exp(-(x - reg->xmin) / delta);
                    }
                    const double Tref =
                        eos::sg_temperature(rr, w.p, cfg.materials[reg->ref_phase]);
                    for (int k = 0; k < n; ++k)
                        w.rho[k] = (k == reg->ref_phase)
                                       ? rr
                                       : eos::sg_density_from_Tp(Tref, w.p, cfg.materials[k]);
                    break;
                }
            }
            for (int k = 0; k < n; ++k) {
                w.e[k] = eos::sg_energy(w.rho[k], w.p, cfg.materials[k]);
                w.T[k] = eos::sg_temperature(w.rho[k], w.p, cfg.materials[k]);
            }
            W.scatter(c, w);
            U.scatter(c, conserved_from_primitive(w, cfg.materials));
        }
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

BoundaryTag parse_bc(const std::string& s) {
    if (s == "extrapolation") return BoundaryTag::extrapolation;
    if (s == "periodic") return BoundaryTag::periodic;
    if (s == "reflective") return BoundaryTag::reflective;
    throw ConfigError("config: unknown boundary tag '" + s + "'");
}

const char* bc_name(BoundaryTag t) {
    switch (t) {
        case BoundaryTag::extrapolation: return "extrapolation";
        case BoundaryTag::periodic: return "periodic";
        case BoundaryTag::reflective: return "reflective";
    }
    return "?";
}

struct Kv {
    std::map<std::string, std::string> entries;

    bool has(const std::string& k) const { return entries.count(k) > 0; }
    std::string str(const std::string& k, const std::string& dflt = "") const {
        auto it = entries.find(k);
        return it == entries.end() ? dflt : it->second;
    }
    double num(const std::string& k, double dflt) const {
        auto it = entries.find(k);
        return it == entries.end() ? dflt : std::stod(it->second);
    }
    double req(const std::string& k, const std::string& section) const {
        auto it = entries.find(k);
        if (it == entries.end())
            throw ConfigError("config: [" + section + "] missing key '" + k + "'");
        return std::stod(it->second);
    }
    int integer(const std::string& k, int dflt) const {
        auto it = entries.find(k);
        return it == entries.end() ? dflt : std::stoi(it->second);
    }
    bool flag(const std::string& k, bool dflt) const {
        auto it = entries.find(k);
        if (it == entries.end()) return dflt;
        return it->second == "true" || it->second == "1" || it->second == "on";
    }
    std::vector<double> list(const std::string& k) const {
        std::vector<double> out;
        auto it = entries.find(k);
        if (it == entries.end()) return out;
        std::istringstream ss(it->second);
        double v;
        while (ss >> v) out.push_back(v);
        return out;
    }
};

ViscosityModel parse_viscosity(const std::string& s) {
    std::istringstream ss(s);
    std::string kind;
    ss >> kind;
    ViscosityModel vm;
    if (kind.empty() || kind == "none") return vm;
    if (kind == "constant") {
        vm.kind = ViscosityModel::Kind::constant;
        ss >> vm.mu0;
    } else if (kind == "sutherland") {
        vm.kind = ViscosityModel::Kind::sutherland;
        ss >> vm.mu0 >> vm.T0 >> vm.W;
    } else if (kind == "braginskii") {
        vm.kind = ViscosityModel::Kind::braginskii;
        ss >> vm.A_c >> vm.Z_e;
    } else {
        throw ConfigError("config: unknown viscosity model '" + kind + "'");
    }
    if (ss.fail()) throw ConfigError("config: bad viscosity parameters in '" + s + "'");
    return vm;
}

ConductivityModel parse_conductivity(const std::string& s) {
    std::istringstream ss(s);
    std::string kind;
    ss >> kind;
    ConductivityModel cm;
    if (kind.empty() || kind == "none") return cm;
    if (kind == "constant") {
        cm.kind = ConductivityModel::Kind::constant;
        ss >> cm.lambda0;
    } else if (kind == "spitzer_harm") {
        cm.kind = ConductivityModel::Kind::spitzer_harm;
        ss >> cm.A_c >> cm.Z_e;
    } else if (kind == "helium_fit") {
        cm.kind = ConductivityModel::Kind::helium_fit;
    } else if (kind == "prandtl") {
        cm.kind = ConductivityModel::Kind::prandtl_from_viscosity;
        ss >> cm.Pr;
    } else {
        throw ConfigError("config: unknown conductivity model '" + kind + "'");
    }
    if (ss.fail() && kind != "helium_fit")
        throw ConfigError("config: bad conductivity parameters in '" + s + "'");
    return cm;
}

std::string viscosity_str(const ViscosityModel& vm) {
    switch (vm.kind) {
        case ViscosityModel::Kind::none: return "none";
        case ViscosityModel::Kind::constant: return "constant " + fmt(vm.mu0);
        case ViscosityModel::Kind::sutherland:
            return "sutherland " + fmt(vm.mu0) + " " + fmt(vm.T0) + " " + fmt(vm.W);
        case ViscosityModel::Kind::braginskii:
            return "braginskii " + fmt(vm.A_c) + " " + fmt(vm.Z_e);
    }
    return "none";
}

std::string conductivity_str(const ConductivityModel& cm) {
    switch (cm.kind) {
        case ConductivityModel::Kind::none: return "none";
        case ConductivityModel::Kind::constant: return "constant " + fmt(cm.lambda0);
        case ConductivityModel::Kind::spitzer_harm:
            return "spitzer_harm " + fmt(cm.A_c) + " " + fmt(cm.Z_e);
        case ConductivityModel::Kind::helium_fit: return "helium_fit";
        case ConductivityModel::Kind::prandtl_from_viscosity: return "prandtl " + fmt(cm.Pr);
    }
    return "none";
}

RegionShape parse_shape(const std::string& s) {
    if (s == "all") return RegionShape::all;
    if (s == "halfplane_x") return RegionShape::halfplane_x;
    if (s == "halfplane_y") return RegionShape::halfplane_y;
    if (s == "box") return RegionShape::box;
    if (s == "circle") return RegionShape::circle;
    if (s == "expdecay_x") return RegionShape::expdecay_x;
    throw ConfigError("config: unknown region shape '" + s + "'");
}

const char* shape_name(RegionShape s) {
    switch (s) {
        case RegionShape::all: return "all";
        case RegionShape::halfplane_x: return "halfplane_x";
        case RegionShape::halfplane_y: return "halfplane_y";
        case RegionShape::box: return "box";
        case RegionShape::circle: return "circle";
        case RegionShape::expdecay_x: return "expdecay_x";
    }
    return "?";
}

} // namespace

CaseConfig parse_config(std::istream& in) {
    CaseConfig cfg;
    std::string line, section;
    std::vector<std::pair<std::string, Kv>> sections;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string trimmed;
        {
            const auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            const auto e = line.find_last_not_of(" \t\r");
            trimmed = line.substr(b, e - b + 1);
        }
        if (trimmed.front() == '[') {
            if (trimmed.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno));
            sections.emplace_back(trimmed.substr(1, trimmed.size() - 2), Kv{});
            continue;
        }
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        if (sections.empty())
            throw ConfigError("config: key outside any section at line " + std::to_string(lineno));
        std::string key = trimmed.substr(0, eq);
        std::string val = trimmed.substr(eq + 1);
        auto strip = [](std::string& s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
        };
        strip(key);
        strip(val);
        sections.back().second.entries[key] = val;
    }

    for (const auto& [name, kv] : sections) {
        if (name == "case") {
            cfg.name = kv.str("name", cfg.name);
        } else if (name == "domain") {
            cfg.dim = kv.integer("dimensions", 1);
            cfg.x0 = kv.req("x0", name);
            cfg.x1 = kv.req("x1", name);
            cfg.nx = kv.integer("nx", 0);
            if (cfg.dim == 2) {
                cfg.y0 = kv.req("y0", name);
                cfg.y1 = kv.req("y1", name);
                cfg.ny = kv.integer("ny", 0);
            }
            cfg.bc[0] = parse_bc(kv.str("bc_left", "extrapolation"));
            cfg.bc[1] = parse_bc(kv.str("bc_right", "extrapolation"));
            cfg.bc[2] = parse_bc(kv.str("bc_bottom", "extrapolation"));
            cfg.bc[3] = parse_bc(kv.str("bc_top", "extrapolation"));
        } else if (name == "units") {
            cfg.units.length = kv.num("length", 1.0);
            cfg.units.time = kv.num("time", 1.0);
            cfg.units.mass = kv.num("mass", 1.0);
            cfg.units.temperature = kv.num("temperature", 1.0);
        } else if (name == "material") {
            MaterialParams m;
            m.name = kv.str("name", "phase" + std::to_string(cfg.materials.size()));
            m.gamma = kv.req("gamma", name);
            m.p_inf = kv.num("p_inf", 0.0);
            m.cv = kv.req("cv", name);
            m.w = kv.num("w", 0.0);
            m.viscosity = parse_viscosity(kv.str("viscosity", "none"));
            m.conductivity = parse_conductivity(kv.str("conductivity", "none"));
            cfg.materials.push_back(m);
        } else if (name == "region") {
            RegionSpec r;
            r.shape = parse_shape(kv.str("shape", "all"));
            r.xmin = kv.num("xmin", r.xmin);
            r.xmax = kv.num("xmax", r.xmax);
            r.ymin = kv.num("ymin", r.ymin);
            r.ymax = kv.num("ymax", r.ymax);
            r.cx = kv.num("cx", 0.0);
            r.cy = kv.num("cy", 0.0);
            r.radius = kv.num("radius", 0.0);
            r.p = kv.req("p", name);
            r.u = kv.num("u", 0.0);
            r.v = kv.num("v", 0.0);
            r.alpha = kv.list("alpha");
            if (kv.has("profile")) {
                std::istringstream ps(kv.str("profile"));
                std::string pk;
                ps >> pk >> r.profile_center >> r.profile_width;
                if (pk != "cosine_x" || ps.fail())
                    throw ConfigError("config: bad profile spec '" + kv.str("profile") + "'");
                r.profile = RegionProfile::cosine_x;
                r.alpha_peak = kv.list("alpha_peak");
            }
            if (kv.has("rho")) {
                r.init = RegionInit::by_density;
                r.rho = kv.list("rho");
            } else if (kv.has("rho_ref")) {
                r.init = RegionInit::by_ref_phase;
                r.ref_phase = kv.integer("ref_phase", 0);
                r.rho_ref = kv.num("rho_ref", 0.0);
                r.rho_ref_end = kv.num("rho_ref_end", 0.0);
            } else {
                r.init = RegionInit::by_temperature;
                r.T = kv.req("T", name);
            }
            cfg.regions.push_back(r);
        } else if (name == "physics") {
            cfg.physics.hydro = kv.flag("hydro", true);
            cfg.physics.viscous = kv.flag("viscous", false);
            cfg.physics.relax = kv.flag("relax", false);
            cfg.physics.conduct = kv.flag("conduct", false);
            cfg.physics.laser = kv.flag("laser", false);
            cfg.physics.overbee = kv.flag("overbee", false);
        } else if (name == "laser") {
            cfg.laser.intensity = kv.num("intensity", 0.0);
            cfg.laser.depth = kv.num("depth", 0.0);
            cfg.laser.rho_critical = kv.num("rho_critical", 0.0);
        } else if (name == "solver") {
            cfg.solver.cfl = kv.num("cfl", cfg.solver.cfl);
            const std::string p = kv.str("parabolic", "lim");
            if (p == "lim") cfg.solver.parabolic = InnerSolver::lim;
            else if (p == "implicit") cfg.solver.parabolic = InnerSolver::implicit_pcg;
            else throw ConfigError("config: parabolic solver must be lim or implicit");
            cfg.solver.picard_tol = kv.num("picard_tol", cfg.solver.picard_tol);
            cfg.solver.picard_max_iter = kv.integer("picard_max_iter", cfg.solver.picard_max_iter);
            cfg.solver.pcg_tol = kv.num("pcg_tol", cfg.solver.pcg_tol);
            cfg.solver.linearized_relax = kv.flag("linearized_relax", false);
            cfg.solver.first_order = kv.flag("first_order", false);
            cfg.solver.stage_z_target = kv.num("stage_z_target", cfg.solver.stage_z_target);
            cfg.solver.stage_substep_cap =
                kv.integer("stage_substep_cap", cfg.solver.stage_substep_cap);
        } else if (name == "output") {
            cfg.output.t_end = kv.req("t_end", name);
            cfg.output.snapshots = kv.integer("snapshots", 1);
            cfg.output.times = kv.list("times");
            cfg.output.prefix = kv.str("prefix", cfg.output.prefix);
            cfg.output.diagnostics_every = kv.integer("diagnostics_every", 1);
        } else {
            throw ConfigError("config: unknown section [" + name + "]");
        }
    }
    if (cfg.nx <= 0) throw ConfigError("config: [domain] nx missing or non-positive");
    if (cfg.dim == 2 && cfg.ny <= 0) throw ConfigError("config: [domain] ny missing");
    return cfg;
}

CaseConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

std::string serialize_config(const CaseConfig& cfg) {
    std::ostringstream o;
    o << "[case]\nname = " << cfg.name << "\n\n";
    o << "[domain]\ndimensions = " << cfg.dim << "\n";
    o << "x0 = " << fmt(cfg.x0) << "\nx1 = " << fmt(cfg.x1) << "\nnx = " << cfg.nx << "\n";
    if (cfg.dim == 2) {
        o << "y0 = " << fmt(cfg.y0) << "\ny1 = " << fmt(cfg.y1) << "\nny = " << cfg.ny << "\n";
    }
    o << "bc_left = " << bc_name(cfg.bc[0]) << "\nbc_right = " << bc_name(cfg.bc[1]) << "\n";
    if (cfg.dim == 2)
        o << "bc_bottom = " << bc_name(cfg.bc[2]) << "\nbc_top = " << bc_name(cfg.bc[3]) << "\n";
    o << "\n[units]\nlength = " << fmt(cfg.units.length) << "\ntime = " << fmt(cfg.units.time)
      << "\nmass = " << fmt(cfg.units.mass) << "\ntemperature = " << fmt(cfg.units.temperature)
      << "\n";
    for (const auto& m : cfg.materials) {
        o << "\n[material]\nname = " << m.name << "\ngamma = " << fmt(m.gamma)
          << "\np_inf = " << fmt(m.p_inf) << "\ncv = " << fmt(m.cv) << "\nw = " << fmt(m.w)
          << "\nviscosity = " << viscosity_str(m.viscosity)
          << "\nconductivity = " << conductivity_str(m.conductivity) << "\n";
    }
    for (const auto& r : cfg.regions) {
        o << "\n[region]\nshape = " << shape_name(r.shape) << "\n";
        if (r.shape == RegionShape::halfplane_x || r.shape == RegionShape::box ||
            r.shape == RegionShape::expdecay_x)
            o << "xmin = " << fmt(r.xmin) << "\nxmax = " << fmt(r.xmax) << "\n";
        if (r.shape == RegionShape::halfplane_y || r.shape == RegionShape::box)
            o << "ymin = " << fmt(r.ymin) << "\nymax = " << fmt(r.ymax) << "\n";
        if (r.shape == RegionShape::circle)
            o << "cx = " << fmt(r.cx) << "\ncy = " << fmt(r.cy) << "\nradius = " << fmt(r.radius)
              << "\n";
        o << "p = " << fmt(r.p) << "\nu = " << fmt(r.u) << "\n";
        if (cfg.dim == 2) o << "v = " << fmt(r.v) << "\n";
        o << "alpha =";
        for (double a : r.alpha) o << " " << fmt(a);
        o << "\n";
        if (r.profile == RegionProfile::cosine_x) {
            o << "profile = cosine_x " << fmt(r.profile_center) << " " << fmt(r.profile_width)
              << "\nalpha_peak =";
            for (double a : r.alpha_peak) o << " " << fmt(a);
            o << "\n";
        }
        switch (r.init) {
            case RegionInit::by_temperature:
                o << "T = " << fmt(r.T) << "\n";
                break;
            case RegionInit::by_density:
                o << "rho =";
                for (double rr : r.rho) o << " " << fmt(rr);
                o << "\n";
                break;
            case RegionInit::by_ref_phase:
                o << "ref_phase = " << r.ref_phase << "\nrho_ref = " << fmt(r.rho_ref) << "\n";
                if (r.shape == RegionShape::expdecay_x)
                    o << "rho_ref_end = " << fmt(r.rho_ref_end) << "\n";
                break;
        }
    }
    o << "\n[physics]\nhydro = " << (cfg.physics.hydro ? "true" : "false")
      << "\nviscous = " << (cfg.physics.viscous ? "true" : "false")
      << "\nrelax = " << (cfg.physics.relax ? "true" : "false")
      << "\nconduct = " << (cfg.physics.conduct ? "true" : "false")
      << "\nlaser = " << (cfg.physics.laser ? "true" : "false")
      << "\noverbee = " << (cfg.physics.overbee ? "true" : "false") << "\n";
    if (cfg.physics.laser)
        o << "\n[laser]\nintensity = " << fmt(cfg.laser.intensity)
          << "\ndepth = " << fmt(cfg.laser.depth)
          << "\nrho_critical = " << fmt(cfg.laser.rho_critical) << "\n";
    o << "\n[solver]\ncfl = " << fmt(cfg.solver.cfl) << "\nparabolic = "
      << (cfg.solver.parabolic == InnerSolver::lim ? "lim" : "implicit")
      << "\npicard_tol = " << fmt(cfg.solver.picard_tol)
      << "\npicard_max_iter = " << cfg.solver.picard_max_iter
      << "\npcg_tol = " << fmt(cfg.solver.pcg_tol)
      << "\nlinearized_relax = " << (cfg.solver.linearized_relax ? "true" : "false")
      << "\nfirst_order = " << (cfg.solver.first_order ? "true" : "false")
      << "\nstage_z_target = " << fmt(cfg.solver.stage_z_target)
      << "\nstage_substep_cap = " << cfg.solver.stage_substep_cap << "\n";
    o << "\n[output]\nt_end = " << fmt(cfg.output.t_end)
      << "\nsnapshots = " << cfg.output.snapshots;
    if (!cfg.output.times.empty()) {
        o << "\ntimes =";
        for (double t : cfg.output.times) o << " " << fmt(t);
    }
    o << "\nprefix = " << cfg.output.prefix
      << "\ndiagnostics_every = " << cfg.output.diagnostics_every << "\n";
    return o.str();
}

} // namespace mcf
