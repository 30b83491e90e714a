#ifndef FAIRBAND_CONFIG_HPP
#define FAIRBAND_CONFIG_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "fairband/adversary.hpp"
#include "fairband/audit.hpp"
#include "fairband/core.hpp"
#include "fairband/grid_epochs.hpp"
#include "fairband/wine.hpp"

namespace fairband
{

enum class EnvKind
{
    Linear,
    Smooth,
    Overlap,
    Wine
};

enum class PolicyType
{
    FairOls,
    RobustFairOls,
    OlsBandit,
    Greedy,
    LinUcb,
    Random,
    FairSmooth,
    RobustFairSmooth,
    SimplifiedSmooth
};

inline std::string to_string(EnvKind k)
{
    switch (k)
    {
    case EnvKind::Linear:
        return "linear";
    case EnvKind::Smooth:
        return "smooth";
    case EnvKind::Overlap:
        return "overlap";
    case EnvKind::Wine:
        return "wine";
    }
    return "?";
}

inline EnvKind parse_env_kind(const std::string& s)
{
    for (auto k : {EnvKind::Linear, EnvKind::Smooth, EnvKind::Overlap, EnvKind::Wine})
        if (to_string(k) == s)
            return k;
    throw Error("unknown environment kind '" + s + "'");
}

inline std::string to_string(PolicyType p)
{
    switch (p)
    {
    case PolicyType::FairOls:
        return "fair_ols";
    case PolicyType::RobustFairOls:
        return "robust_fair_ols";
    case PolicyType::OlsBandit:
        return "ols_bandit";
    case PolicyType::Greedy:
        return "greedy";
    case PolicyType::LinUcb:
        return "lin_ucb";
    case PolicyType::Random:
        return "random";
    case PolicyType::FairSmooth:
        return "fair_smooth";
    case PolicyType::RobustFairSmooth:
        return "robust_fair_smooth";
    case PolicyType::SimplifiedSmooth:
        return "simplified_smooth";
    }
    return "?";
}

inline const std::vector<PolicyType>& all_policy_types()
{
    static const std::vector<PolicyType> v{PolicyType::FairOls,    PolicyType::RobustFairOls,    PolicyType::OlsBandit,
                                           PolicyType::Greedy,     PolicyType::LinUcb,           PolicyType::Random,
                                           PolicyType::FairSmooth, PolicyType::RobustFairSmooth, PolicyType::SimplifiedSmooth};
    return v;
}

inline PolicyType parse_policy_type(const std::string& s)
{
    for (auto p : all_policy_types())
        if (to_string(p) == s)
            return p;
    throw Error("unknown policy '" + s + "'");
}

inline bool is_smooth(PolicyType p)
{
    return p == PolicyType::FairSmooth || p == PolicyType::RobustFairSmooth || p == PolicyType::SimplifiedSmooth;
}

struct EnvSpec
{
    EnvKind kind = EnvKind::Linear;
    std::size_t arms = 10;
    std::size_t dim = 10;
    double sigma = 0.05;
    std::string wine_red;
    std::string wine_white;
};

struct AttackSpec
{
    AttackKind kind = AttackKind::Null;
    std::vector<std::size_t> arms;
    double target = 0.0;
    /// negative means "auto": sized to cover the whole attack window
    double budget = 0.0;
    /// 0 means "auto": resolved against the attacked policy's schedule
    std::size_t t0 = 0;
    /// negative means "auto": the environment's sup norm
    double fmax = -1.0;
    SuppressionRegion region;

    bool budget_auto() const { return budget < 0.0; }
};

/// One policy entry. Fields irrelevant to the type are ignored.
struct PolicySpec
{
    std::string label;
    PolicyType type = PolicyType::Random;
    /// false runs this entry without corruption at matched seeds
    bool attacked = true;

    double C_a = 20.0;
    double C_b = 1.0;
    double h = 1.2;
    double gamma_lin = 4.0;
    double kappa = 2.0;
    /// known corruption budget of the robust policies; negative uses the attack budget
    double budget = -1.0;
    std::size_t q = 2;
    std::size_t warm_start = 0;
    double ridge = 0.01;
    double width_scale = 0.05;
    double width_offset = 0.2;

    double beta = 5.0;
    double beta_prime = 5.0;
    double c0 = 0.2;
    double c1 = 0.03;
    double c2 = 0.3;
    double delta_mult = 1.0;
    ScheduleMode mode = ScheduleMode::Simplified;
    double p_star = 0.25;
    double c_k = 1.0;

    double ucb_c1 = 0.5;
    double ucb_c2 = 1.0;
    double bin_side = 0.25;
};

/// Hyperparameter defaults by policy type and data family.
inline PolicySpec default_policy(PolicyType type, bool wine, std::string label = {})
{
    PolicySpec p;
    p.type = type;
    p.label = label.empty() ? to_string(type) : std::move(label);
    if (wine)
    {
        p.C_a = 50.0;
        p.C_b = 5.0;
        p.h = 0.8;
        p.gamma_lin = 2.0;
        p.kappa = 0.01;
        p.c0 = 0.15;
        p.c1 = 0.008;
        p.c2 = 0.05;
    }
    return p;
}

struct ExperimentConfig
{
    std::string id = "custom";
    std::size_t horizon = 5000;
    std::vector<std::uint64_t> seeds;
    EnvSpec env;
    AttackSpec attack;
    AuditConfig audit;
    std::vector<PolicySpec> policies;
    std::string output_dir = "results";
    std::size_t threads = 0;
    std::size_t stride = 1;
};

inline std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t n)
{
    std::vector<std::uint64_t> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = first + i;
    return s;
}

/// Structural checks; throws with a message naming the offending field.
inline void validate(const ExperimentConfig& c)
{
    if (c.horizon < 1)
        throw Error("experiment.horizon must be at least 1");
    if (c.seeds.empty())
        throw Error("experiment.seeds must not be empty");
    {
        std::set<std::uint64_t> s(c.seeds.begin(), c.seeds.end());
        if (s.size() != c.seeds.size())
            throw Error("experiment.seeds must be distinct");
    }
    if (c.stride < 1)
        throw Error("experiment.stride must be at least 1");
    if (c.env.kind == EnvKind::Linear && (c.env.arms < 2 || c.env.dim < 1))
        throw Error("environment: linear worlds need arms >= 2 and dim >= 1");
    if (!(c.env.sigma >= 0.0) || !std::isfinite(c.env.sigma))
        throw Error("environment.sigma must be a finite nonnegative number");
    if (!(c.audit.tau >= 0.0))
        throw Error("audit.tau must be nonnegative");
    if (c.policies.empty())
        throw Error("at least one [policy:NAME] section is required");

    std::size_t K = c.env.arms;
    if (c.env.kind == EnvKind::Smooth)
        K = 4;
    else if (c.env.kind == EnvKind::Overlap)
        K = 2;
    else if (c.env.kind == EnvKind::Wine)
        K = 3;

    const auto& a = c.attack;
    if (a.kind != AttackKind::Null)
    {
        if (a.arms.empty())
            throw Error("attack.arms must list at least one arm");
        for (auto k : a.arms)
            if (k >= K)
                throw Error("attack.arms: arm " + std::to_string(k) + " out of range for " + std::to_string(K) +
                            " arms");
        if (a.kind == AttackKind::TargetValue && a.budget_auto())
            throw Error("attack.budget = auto is only meaningful for windowed attacks");
        if (a.kind == AttackKind::CovertOverlap && c.env.kind != EnvKind::Overlap)
            throw Error("attack.kind = covert_overlap requires environment.kind = overlap");
        if (!(a.region.depth > 0.0))
            throw Error("attack.depth must be positive");
    }
    else if (a.budget > 0.0)
    {
        throw Error("attack.budget given but attack.kind is null");
    }

    std::set<std::string> labels;
    for (const auto& p : c.policies)
    {
        if (!labels.insert(p.label).second)
            throw Error("duplicate policy label '" + p.label + "'");
        const bool smooth_env = c.env.kind == EnvKind::Smooth || c.env.kind == EnvKind::Overlap;
        const bool linear_type = p.type == PolicyType::FairOls || p.type == PolicyType::RobustFairOls ||
                                 p.type == PolicyType::OlsBandit || p.type == PolicyType::Greedy ||
                                 p.type == PolicyType::LinUcb;
        if (linear_type && smooth_env)
            throw Error("policy " + p.label + ": linear policies need a linear or wine environment");
        if (is_smooth(p.type))
        {
            if (!(p.beta > 1.0) || !(p.beta_prime > 1.0 && p.beta_prime <= p.beta))
                throw Error("policy " + p.label + ": need beta > 1 and 1 < beta' <= beta");
            if (!(p.c0 > 0.0 && p.c1 > 0.0 && p.c2 >= 0.0 && p.delta_mult > 0.0))
                throw Error("policy " + p.label + ": schedule constants must be positive");
        }
        if (linear_type && !(p.C_a > 0.0 && p.C_b > 0.0 && p.h > 0.0))
            throw Error("policy " + p.label + ": C_a, C_b and h must be positive");
        if (p.type == PolicyType::OlsBandit && p.q < 1)
            throw Error("policy " + p.label + ": q must be at least 1");
    }
    if (c.env.kind == EnvKind::Wine && (c.env.wine_red.empty() || c.env.wine_white.empty()))
        throw Error("wine experiments need both wine CSV paths (environment.wine_red / environment.wine_white)");
}

namespace detail
{

inline double parse_real(const std::string& where, const std::string& s)
{
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || !std::isfinite(v))
        throw Error(where + ": invalid number '" + s + "'");
    return v;
}

inline std::uint64_t parse_uint(const std::string& where, const std::string& s)
{
    std::uint64_t v = 0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e)
        throw Error(where + ": invalid nonnegative integer '" + s + "'");
    return v;
}

inline bool parse_bool(const std::string& where, const std::string& s)
{
    if (s == "true" || s == "yes" || s == "1")
        return true;
    if (s == "false" || s == "no" || s == "0")
        return false;
    throw Error(where + ": expected true or false, got '" + s + "'");
}

inline std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

/// Comma-separated integers; "a-b" expands to the inclusive range.
inline std::vector<std::uint64_t> parse_uint_list(const std::string& where, const std::string& s)
{
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (item.empty())
            throw Error(where + ": empty list element");
        if (auto dash = item.find('-'); dash != std::string::npos && dash > 0)
        {
            const auto lo = parse_uint(where, trim(item.substr(0, dash)));
            const auto hi = parse_uint(where, trim(item.substr(dash + 1)));
            if (hi < lo || hi - lo > 1000000)
                throw Error(where + ": invalid range '" + item + "'");
            for (auto v = lo; v <= hi; ++v)
                out.push_back(v);
        }
        else
        {
            out.push_back(parse_uint(where, item));
        }
    }
    return out;
}

inline std::string fmt(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <class Int>
std::string join(const std::vector<Int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (i)
            s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

/// Reads the keys of one section, rejecting anything not in `allowed`.
class SectionReader
{
public:
    SectionReader(std::string name, const boost::property_tree::ptree& tree, std::set<std::string> allowed)
        : name_(std::move(name)), tree_(tree)
    {
        for (const auto& [key, child] : tree_)
        {
            if (!child.empty())
                throw Error("[" + name_ + "]: nested keys are not supported ('" + key + "')");
            if (!allowed.count(key))
                throw Error("[" + name_ + "]: unknown key '" + key + "'");
            if (!seen_.insert(key).second)
                throw Error("[" + name_ + "]: duplicate key '" + key + "'");
        }
    }

    std::optional<std::string> raw(const std::string& key) const
    {
        for (const auto& [k, child] : tree_)
            if (k == key)
                return trim(child.data());
        return std::nullopt;
    }

    std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

    void real(const std::string& key, double& out) const
    {
        if (auto v = raw(key))
            out = parse_real(where(key), *v);
    }
    template <class Int>
    void integer(const std::string& key, Int& out) const
    {
        if (auto v = raw(key))
            out = static_cast<Int>(parse_uint(where(key), *v));
    }
    void boolean(const std::string& key, bool& out) const
    {
        if (auto v = raw(key))
            out = parse_bool(where(key), *v);
    }
    void text(const std::string& key, std::string& out) const
    {
        if (auto v = raw(key))
            out = *v;
    }

private:
    std::string name_;
    const boost::property_tree::ptree& tree_;
    std::set<std::string> seen_;
};

inline const std::set<std::string>& policy_keys(PolicyType t)
{
    static const std::map<PolicyType, std::set<std::string>> keys = [] {
        std::map<PolicyType, std::set<std::string>> m;
        const std::set<std::string> common{"type", "attacked"};
        auto with = [&](std::initializer_list<const char*> extra) {
            std::set<std::string> s = common;
            for (auto e : extra)
                s.insert(e);
            return s;
        };
        const auto smooth = {"beta", "beta_prime", "c0", "c1", "c2", "delta_mult", "schedule", "p_star", "c_k"};
        m[PolicyType::FairOls] = with({"C_a", "C_b", "h"});
        m[PolicyType::RobustFairOls] = with({"C_a", "C_b", "h", "gamma_lin", "kappa", "budget"});
        m[PolicyType::OlsBandit] = with({"q", "h"});
        m[PolicyType::Greedy] = with({"warm_start"});
        m[PolicyType::LinUcb] = with({"ridge", "width_scale", "width_offset"});
        m[PolicyType::Random] = with({});
        m[PolicyType::FairSmooth] = with(smooth);
        m[PolicyType::RobustFairSmooth] = with(smooth);
        m[PolicyType::RobustFairSmooth].insert("budget");
        m[PolicyType::SimplifiedSmooth] = with({"ucb_c1", "ucb_c2", "bin_side"});
        return m;
    }();
    return keys.at(t);
}

/// The INI reader drops sections without keys. Rebuilds the tree in header
/// order so that e.g. a bare [policy:random] still counts.
inline boost::property_tree::ptree with_empty_sections(const std::string& text, boost::property_tree::ptree parsed)
{
    boost::property_tree::ptree out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
    {
        line = trim(line);
        if (line.size() < 2 || line.front() != '[' || line.back() != ']')
            continue;
        const std::string name = trim(line.substr(1, line.size() - 2));
        if (out.find(name) != out.not_found())
            continue;
        auto it = parsed.find(name);
        out.push_back({name, it != parsed.not_found() ? it->second : boost::property_tree::ptree{}});
    }
    for (const auto& [name, sect] : parsed)
        if (out.find(name) == out.not_found())
            out.push_back({name, sect});
    return out;
}

} // namespace detail

/// Parses the INI text of an experiment. Sections: [experiment],
/// [environment], [attack], [audit] and one [policy:LABEL] per policy.
inline ExperimentConfig parse_config_string(const std::string& text, const std::string& origin = "<config>")
{
    namespace pt = boost::property_tree;
    pt::ptree root;
    try
    {
        std::istringstream is(text);
        pt::read_ini(is, root);
    }
    catch (const pt::ini_parser_error& e)
    {
        throw Error(origin + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    root = detail::with_empty_sections(text, std::move(root));

    ExperimentConfig c;
    bool have_experiment = false;
    bool have_env = false;
    for (const auto& [name, sect] : root)
    {
        if (sect.empty() && !sect.data().empty())
            throw Error(origin + ": key '" + name + "' appears outside any section");
        if (name == "experiment" || name == "environment" || name == "attack" || name == "audit" ||
            name.rfind("policy:", 0) == 0)
            continue;
        throw Error(origin + ": unknown section [" + name + "]");
    }

    if (auto it = root.find("experiment"); it != root.not_found())
    {
        have_experiment = true;
        detail::SectionReader r("experiment", it->second,
                                {"id", "horizon", "seeds", "runs", "first_seed", "output", "threads", "stride"});
        r.text("id", c.id);
        r.integer("horizon", c.horizon);
        if (auto s = r.raw("seeds"))
        {
            if (r.raw("runs"))
                throw Error(origin + ": [experiment] give either seeds or runs, not both");
            c.seeds = detail::parse_uint_list(r.where("seeds"), *s);
        }
        else
        {
            std::size_t runs = 10;
            std::uint64_t first = 1;
            r.integer("runs", runs);
            r.integer("first_seed", first);
            c.seeds = seed_range(first, runs);
        }
        r.text("output", c.output_dir);
        r.integer("threads", c.threads);
        r.integer("stride", c.stride);
    }
    if (!have_experiment)
        throw Error(origin + ": missing [experiment] section");

    if (auto it = root.find("environment"); it != root.not_found())
    {
        have_env = true;
        detail::SectionReader r("environment", it->second,
                                {"kind", "arms", "dim", "sigma", "wine_red", "wine_white"});
        if (auto k = r.raw("kind"))
            c.env.kind = parse_env_kind(*k);
        if (c.env.kind == EnvKind::Wine)
            c.env.sigma = 0.0;
        r.integer("arms", c.env.arms);
        r.integer("dim", c.env.dim);
        r.real("sigma", c.env.sigma);
        r.text("wine_red", c.env.wine_red);
        r.text("wine_white", c.env.wine_white);
        if (c.env.kind != EnvKind::Linear && (r.raw("arms") || r.raw("dim")))
            throw Error(origin + ": [environment] arms and dim are fixed for the " + to_string(c.env.kind) +
                        " world");
    }
    if (!have_env)
        throw Error(origin + ": missing [environment] section");
    if (c.env.kind == EnvKind::Wine)
        c.audit.tau = 0.01;

    if (auto it = root.find("attack"); it != root.not_found())
    {
        detail::SectionReader r("attack", it->second,
                                {"kind", "arms", "target", "budget", "t0", "fmax", "depth", "region_lo",
                                 "region_hi", "feather"});
        if (auto k = r.raw("kind"))
            c.attack.kind = parse_attack_kind(*k);
        if (auto a = r.raw("arms"))
            for (auto v : detail::parse_uint_list(r.where("arms"), *a))
                c.attack.arms.push_back(static_cast<std::size_t>(v));
        r.real("target", c.attack.target);
        if (auto b = r.raw("budget"))
        {
            c.attack.budget = *b == "auto" ? -1.0 : detail::parse_real(r.where("budget"), *b);
            if (*b != "auto" && c.attack.budget < 0.0)
                throw Error(r.where("budget") + ": must be nonnegative or auto");
        }
        if (auto t = r.raw("t0"); t && *t != "auto")
        {
            c.attack.t0 = static_cast<std::size_t>(detail::parse_uint(r.where("t0"), *t));
            if (c.attack.t0 == 0)
                throw Error(r.where("t0") + ": must be positive or auto");
        }
        if (auto f = r.raw("fmax"); f && *f != "auto")
            c.attack.fmax = detail::parse_real(r.where("fmax"), *f);
        r.real("depth", c.attack.region.depth);
        r.real("region_lo", c.attack.region.lo);
        r.real("region_hi", c.attack.region.hi);
        r.real("feather", c.attack.region.feather);
    }

    if (auto it = root.find("audit"); it != root.not_found())
    {
        detail::SectionReader r("audit", it->second, {"tau", "ties_unfair"});
        r.real("tau", c.audit.tau);
        r.boolean("ties_unfair", c.audit.ties_unfair);
    }

    const bool wine = c.env.kind == EnvKind::Wine;
    for (const auto& [name, sect] : root)
    {
        if (name.rfind("policy:", 0) != 0)
            continue;
        const std::string label = name.substr(7);
        if (label.empty())
            throw Error(origin + ": policy section needs a label, e.g. [policy:fair_ols]");
        const auto type_raw = sect.get_optional<std::string>("type");
        const PolicyType type = parse_policy_type(type_raw ? detail::trim(*type_raw) : label);
        detail::SectionReader r(name, sect, detail::policy_keys(type));
        PolicySpec p = default_policy(type, wine, label);
        r.boolean("attacked", p.attacked);
        r.real("C_a", p.C_a);
        r.real("C_b", p.C_b);
        r.real("h", p.h);
        r.real("gamma_lin", p.gamma_lin);
        r.real("kappa", p.kappa);
        r.real("budget", p.budget);
        r.integer("q", p.q);
        r.integer("warm_start", p.warm_start);
        r.real("ridge", p.ridge);
        r.real("width_scale", p.width_scale);
        r.real("width_offset", p.width_offset);
        r.real("beta", p.beta);
        p.beta_prime = p.beta;
        r.real("beta_prime", p.beta_prime);
        r.real("c0", p.c0);
        r.real("c1", p.c1);
        r.real("c2", p.c2);
        r.real("delta_mult", p.delta_mult);
        if (auto m = r.raw("schedule"))
        {
            if (*m == "simplified")
                p.mode = ScheduleMode::Simplified;
            else if (*m == "theoretical")
                p.mode = ScheduleMode::Theoretical;
            else
                throw Error(r.where("schedule") + ": expected simplified or theoretical");
        }
        r.real("p_star", p.p_star);
        r.real("c_k", p.c_k);
        r.real("ucb_c1", p.ucb_c1);
        r.real("ucb_c2", p.ucb_c2);
        r.real("bin_side", p.bin_side);
        c.policies.push_back(std::move(p));
    }

    validate(c);
    return c;
}

inline ExperimentConfig parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_string(ss.str(), path);
}

/// Writes a fully resolved config back to INI form.
inline std::string to_ini(const ExperimentConfig& c)
{
    using detail::fmt;
    std::ostringstream os;
    os << "[experiment]\n"
       << "id = " << c.id << "\n"
       << "horizon = " << c.horizon << "\n"
       << "seeds = " << detail::join(c.seeds) << "\n"
       << "output = " << c.output_dir << "\n"
       << "threads = " << c.threads << "\n"
       << "stride = " << c.stride << "\n\n";
    os << "[environment]\n"
       << "kind = " << to_string(c.env.kind) << "\n";
    if (c.env.kind == EnvKind::Linear)
        os << "arms = " << c.env.arms << "\n"
           << "dim = " << c.env.dim << "\n";
    os << "sigma = " << fmt(c.env.sigma) << "\n";
    if (c.env.kind == EnvKind::Wine)
        os << "wine_red = " << c.env.wine_red << "\n"
           << "wine_white = " << c.env.wine_white << "\n";
    os << "\n[attack]\n"
       << "kind = " << to_string(c.attack.kind) << "\n";
    if (c.attack.kind != AttackKind::Null)
    {
        os << "arms = " << detail::join(c.attack.arms) << "\n"
           << "budget = " << (c.attack.budget_auto() ? std::string("auto") : fmt(c.attack.budget)) << "\n";
        if (c.attack.kind == AttackKind::TargetValue)
            os << "target = " << fmt(c.attack.target) << "\n";
        else
            os << "t0 = " << (c.attack.t0 == 0 ? std::string("auto") : std::to_string(c.attack.t0)) << "\n";
        if (c.attack.kind == AttackKind::ExplorationMask)
            os << "fmax = " << (c.attack.fmax < 0.0 ? std::string("auto") : fmt(c.attack.fmax)) << "\n";
        if (c.attack.kind == AttackKind::CovertOverlap)
            os << "depth = " << fmt(c.attack.region.depth) << "\n"
               << "region_lo = " << fmt(c.attack.region.lo) << "\n"
               << "region_hi = " << fmt(c.attack.region.hi) << "\n"
               << "feather = " << fmt(c.attack.region.feather) << "\n";
    }
    os << "\n[audit]\n"
       << "tau = " << fmt(c.audit.tau) << "\n"
       << "ties_unfair = " << (c.audit.ties_unfair ? "true" : "false") << "\n";
    for (const auto& p : c.policies)
    {
        os << "\n[policy:" << p.label << "]\n"
           << "type = " << to_string(p.type) << "\n"
           << "attacked = " << (p.attacked ? "true" : "false") << "\n";
        const auto& keys = detail::policy_keys(p.type);
        auto put = [&](const char* k, const std::string& v) {
            if (keys.count(k))
                os << k << " = " << v << "\n";
        };
        put("C_a", fmt(p.C_a));
        put("C_b", fmt(p.C_b));
        put("h", fmt(p.h));
        put("gamma_lin", fmt(p.gamma_lin));
        put("kappa", fmt(p.kappa));
        if (p.budget >= 0.0)
            put("budget", fmt(p.budget));
        put("q", std::to_string(p.q));
        put("warm_start", std::to_string(p.warm_start));
        put("ridge", fmt(p.ridge));
        put("width_scale", fmt(p.width_scale));
        put("width_offset", fmt(p.width_offset));
        put("beta", fmt(p.beta));
        put("beta_prime", fmt(p.beta_prime));
        put("c0", fmt(p.c0));
        put("c1", fmt(p.c1));
        put("c2", fmt(p.c2));
        put("delta_mult", fmt(p.delta_mult));
        put("schedule", p.mode == ScheduleMode::Simplified ? "simplified" : "theoretical");
        if (p.mode == ScheduleMode::Theoretical)
        {
            put("p_star", fmt(p.p_star));
            put("c_k", fmt(p.c_k));
        }
        put("ucb_c1", fmt(p.ucb_c1));
        put("ucb_c2", fmt(p.ucb_c2));
        put("bin_side", fmt(p.bin_side));
    }
    return os.str();
}

inline std::vector<std::string> preset_names()
{
    return {"linear-benign", "smooth-benign", "linear-attack", "smooth-attack",
            "wine-benign",   "wine-attack",   "overlap-covert", "linear-mask"};
}

/// Built-in experiment definitions. Wine presets need the CSV paths filled in
/// before validation.
inline ExperimentConfig preset(const std::string& name)
{
    ExperimentConfig c;
    c.id = name;
    c.seeds = seed_range(1, 10);
    c.output_dir = "results/" + name;
    auto add = [&](PolicyType t, bool wine = false, std::string label = {}) {
        c.policies.push_back(default_policy(t, wine, std::move(label)));
        return &c.policies.back();
    };

    if (name == "linear-benign" || name == "linear-attack")
    {
        c.env = {EnvKind::Linear, 10, 10, 0.05, {}, {}};
        if (name == "linear-attack")
        {
            c.horizon = 10000;
            c.attack.kind = AttackKind::TargetValue;
            c.attack.arms = {0, 1, 2, 3, 4};
            c.attack.target = -4.0;
            c.attack.budget = 200.0;
            add(PolicyType::RobustFairOls);
        }
        add(PolicyType::FairOls);
        add(PolicyType::OlsBandit);
        add(PolicyType::Greedy);
        add(PolicyType::LinUcb);
        add(PolicyType::Random);
    }
    else if (name == "smooth-benign" || name == "smooth-attack")
    {
        c.env = {EnvKind::Smooth, 4, 2, 0.05, {}, {}};
        if (name == "smooth-attack")
        {
            c.horizon = 10000;
            c.attack.kind = AttackKind::TargetValue;
            c.attack.arms = {0, 1};
            c.attack.target = -0.1;
            c.attack.budget = 200.0;
            add(PolicyType::RobustFairSmooth);
        }
        add(PolicyType::FairSmooth);
        add(PolicyType::SimplifiedSmooth);
        add(PolicyType::Random);
    }
    else if (name == "wine-benign" || name == "wine-attack")
    {
        c.env = {EnvKind::Wine, 3, kWineFeatures, 0.0, {}, {}};
        c.horizon = 6497;
        c.audit.tau = 0.01;
        const bool attack = name == "wine-attack";
        if (attack)
        {
            c.attack.kind = AttackKind::TargetValue;
            c.attack.arms = {0, 2};
            c.attack.target = 0.0;
            c.attack.budget = 500.0;
            add(PolicyType::RobustFairOls, true);
        }
        add(PolicyType::FairOls, true);
        add(PolicyType::OlsBandit, true);
        add(PolicyType::Greedy, true);
        add(PolicyType::LinUcb, true);
        add(PolicyType::Random, true);
        if (attack)
            add(PolicyType::RobustFairSmooth, true);
        add(PolicyType::FairSmooth, true);
        add(PolicyType::SimplifiedSmooth, true);
    }
    else if (name == "overlap-covert")
    {
        c.env = {EnvKind::Overlap, 2, 1, 0.05, {}, {}};
        c.horizon = 20000;
        c.attack.kind = AttackKind::CovertOverlap;
        c.attack.arms = {0};
        c.attack.budget = -1.0;
        c.audit.ties_unfair = true;
        add(PolicyType::FairSmooth, false, "fair_smooth_attacked");
        add(PolicyType::FairSmooth, false, "fair_smooth_clean")->attacked = false;
    }
    else if (name == "linear-mask")
    {
        c.env = {EnvKind::Linear, 2, 2, 0.05, {}, {}};
        c.attack.kind = AttackKind::ExplorationMask;
        c.attack.arms = {0};
        c.attack.budget = -1.0;
        add(PolicyType::FairOls, false, "fair_ols_attacked");
        add(PolicyType::FairOls, false, "fair_ols_clean")->attacked = false;
        add(PolicyType::Random)->attacked = false;
    }
    else
    {
        throw Error("unknown preset '" + name + "'");
    }
    return c;
}

} // namespace fairband

#endif
