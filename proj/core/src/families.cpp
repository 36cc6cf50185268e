#include "quadbound/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "quadbound/piecewise_linear.hpp"

namespace quadbound {
namespace {

// splitmix64: decorrelates (seed, index) pairs into engine seeds.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return std::mt19937_64(mix64(mix64(seed ^ (stream * 0xd1342543de82ef95ULL)) + index));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool near(double x, double y) { return std::fabs(x - y) < 1e-12; }

struct Resolved {
    FamilyTag tag;
    int sub_index;
};

Resolved resolve(FamilyTag tag, int index) {
    if (index < 0) throw BadFamilyParameters("family index must be >= 0");
    if (tag != FamilyTag::All) return {tag, index};
    if (index < 3) return {FamilyTag::Canonical, index};
    const int r = index - 3;
    return {(r % 2 == 0) ? FamilyTag::Quadratic : FamilyTag::DProfile, r / 2};
}

FamilyMember canonical_member(const FamilyConfig& config, int index) {
    if (!near(config.domain.a, 0.0) || !near(config.domain.b, 1.0))
        throw BadFamilyParameters("canonical members are defined on [0,1]");
    const int id = index % 3;
    FamilyMember m;
    m.theta = {static_cast<double>(id)};
    m.bounds = DerivativeBounds{0.0, 1.0, Provenance::Exact};
    m.model.domain = config.domain;
    switch (id) {
        case 0:
            m.model.eval = [](double t) { return t; };
            m.model.deriv = [](double) { return 1.0; };
            m.name = "canonical:x";
            break;
        case 1:
            m.model.eval = [](double t) { return 0.5 * t * t; };
            m.model.deriv = [](double t) { return t; };
            m.name = "canonical:x^2/2";
            break;
        default:
            m.model.eval = [](double t) { return std::min(t, 0.5); };
            m.model.deriv = [](double t) { return t < 0.5 ? 1.0 : 0.0; };
            m.kinks = {0.5};
            m.name = "canonical:min(x,1/2)";
            break;
    }
    m.model.description = m.name;
    return m;
}

FamilyMember quadratic_member(const FamilyConfig& config, std::vector<double> theta) {
    const Interval iv = config.domain;
    FamilyMember m;
    m.model.domain = iv;
    if (config.normalized_derivative) {
        // theta = (c0, w0, w1): g' runs linearly from d*w0 to d*w1,
        // w0, w1 in [0,1], so g' stays inside [0, d].
        const double d = iv.width();
        const double c0 = theta[0];
        const double w0 = std::clamp(theta[1], 0.0, 1.0);
        const double w1 = std::clamp(theta[2], 0.0, 1.0);
        const double y0 = d * w0;
        const double slope = (w1 - w0);  // of g' per unit t
        m.model.eval = [c0, y0, slope, a = iv.a](double t) {
            const double dt = t - a;
            return c0 + y0 * dt + 0.5 * slope * dt * dt;
        };
        m.model.deriv = [y0, slope, a = iv.a](double t) { return y0 + slope * (t - a); };
        m.bounds = DerivativeBounds{d * std::min(w0, w1), d * std::max(w0, w1),
                                    Provenance::Exact};
        m.theta = {c0, w0, w1};
        m.name = "quadratic-normalized";
    } else {
        const double c0 = theta[0], c1 = theta[1], c2 = theta[2];
        m.model.eval = [c0, c1, c2](double t) { return c0 + c1 * t + c2 * t * t; };
        m.model.deriv = [c1, c2](double t) { return c1 + 2.0 * c2 * t; };
        const double da = c1 + 2.0 * c2 * iv.a;
        const double db = c1 + 2.0 * c2 * iv.b;
        m.bounds = DerivativeBounds{std::min(da, db), std::max(da, db), Provenance::Exact};
        m.theta = {c0, c1, c2};
        m.name = "quadratic";
    }
    m.model.description = m.name;
    return m;
}

FamilyMember dprofile_member(const FamilyConfig& config, std::vector<double> values) {
    const Interval iv = config.domain;
    const int k = static_cast<int>(values.size());
    const double lo = config.normalized_derivative ? 0.0 : config.clamp_lo;
    const double hi = config.normalized_derivative ? iv.width() : config.clamp_hi;
    std::vector<double> xs(k);
    for (int i = 0; i < k; ++i) xs[i] = iv.a + iv.width() * i / (k - 1.0);
    for (double& v : values) v = std::clamp(v, lo, hi);
    PiecewiseLinear profile(xs, values);

    FamilyMember m;
    m.model.domain = iv;
    m.model.eval = [profile](double t) { return profile.integral_from_start(t); };
    m.model.deriv = [profile](double t) { return profile(t); };
    m.bounds = DerivativeBounds{lo, hi, Provenance::Exact};
    m.kinks = profile.interior_nodes();
    m.theta = std::move(values);
    m.name = "dprofile(k=" + std::to_string(k) + ")";
    m.model.description = m.name;
    return m;
}

}  // namespace

std::string_view family_name(FamilyTag t) {
    switch (t) {
        case FamilyTag::Canonical: return "canonical";
        case FamilyTag::Quadratic: return "quadratic";
        case FamilyTag::DProfile: return "dprofile";
        case FamilyTag::All: return "all";
    }
    return "?";
}

std::optional<FamilyTag> parse_family(std::string_view name) {
    for (FamilyTag t :
         {FamilyTag::Canonical, FamilyTag::Quadratic, FamilyTag::DProfile, FamilyTag::All})
        if (name == family_name(t)) return t;
    return std::nullopt;
}

FamilyMember sample_family(const FamilyConfig& config, std::uint64_t seed, int index) {
    const Resolved r = resolve(config.tag, index);
    FamilyMember m;
    switch (r.tag) {
        case FamilyTag::Canonical:
            m = canonical_member(config, r.sub_index);
            break;
        case FamilyTag::Quadratic: {
            auto rng = engine_for(seed, 1, static_cast<std::uint64_t>(r.sub_index));
            std::vector<double> theta(3);
            if (config.normalized_derivative) {
                theta[0] = uniform(rng, config.coeff_lo, config.coeff_hi);
                theta[1] = uniform(rng, 0.0, 1.0);
                theta[2] = uniform(rng, 0.0, 1.0);
            } else {
                for (double& c : theta) c = uniform(rng, config.coeff_lo, config.coeff_hi);
            }
            m = quadratic_member(config, std::move(theta));
            break;
        }
        case FamilyTag::DProfile: {
            if (config.dprofile_nodes < 2)
                throw BadFamilyParameters("dprofile needs at least 2 nodes");
            auto rng = engine_for(seed, 2, static_cast<std::uint64_t>(r.sub_index));
            const double lo = config.normalized_derivative ? 0.0 : config.clamp_lo;
            const double hi = config.normalized_derivative ? config.domain.width()
                                                           : config.clamp_hi;
            std::vector<double> values(config.dprofile_nodes);
            for (double& v : values) v = uniform(rng, lo, hi);
            m = dprofile_member(config, std::move(values));
            break;
        }
        case FamilyTag::All:
            throw BadFamilyParameters("unresolved composite family");
    }
    m.index = index;
    return m;
}

ThetaBox theta_box(const FamilyConfig& config, int index) {
    const Resolved r = resolve(config.tag, index);
    ThetaBox box;
    switch (r.tag) {
        case FamilyTag::Canonical:
            box.lo = {0.0};
            box.hi = {2.0};
            box.frozen = true;
            break;
        case FamilyTag::Quadratic:
            if (config.normalized_derivative) {
                box.lo = {config.coeff_lo, 0.0, 0.0};
                box.hi = {config.coeff_hi, 1.0, 1.0};
            } else {
                box.lo.assign(3, config.coeff_lo);
                box.hi.assign(3, config.coeff_hi);
            }
            break;
        case FamilyTag::DProfile: {
            const double lo = config.normalized_derivative ? 0.0 : config.clamp_lo;
            const double hi = config.normalized_derivative ? config.domain.width()
                                                           : config.clamp_hi;
            box.lo.assign(static_cast<std::size_t>(config.dprofile_nodes), lo);
            box.hi.assign(static_cast<std::size_t>(config.dprofile_nodes), hi);
            break;
        }
        case FamilyTag::All:
            throw BadFamilyParameters("unresolved composite family");
    }
    return box;
}

FamilyMember member_from_theta(const FamilyConfig& config, std::uint64_t seed, int index,
                               std::vector<double> theta) {
    const Resolved r = resolve(config.tag, index);
    FamilyMember m;
    switch (r.tag) {
        case FamilyTag::Canonical: {
            (void)seed;
            const int id = theta.empty() ? r.sub_index
                                         : static_cast<int>(std::clamp(
                                               std::nearbyint(theta[0]), 0.0, 2.0));
            m = canonical_member(config, id);
            break;
        }
        case FamilyTag::Quadratic: {
            if (theta.size() != 3) throw BadFamilyParameters("quadratic theta has 3 entries");
            if (config.normalized_derivative) {
                theta[1] = std::clamp(theta[1], 0.0, 1.0);
                theta[2] = std::clamp(theta[2], 0.0, 1.0);
            }
            m = quadratic_member(config, std::move(theta));
            break;
        }
        case FamilyTag::DProfile: {
            if (static_cast<int>(theta.size()) != config.dprofile_nodes)
                throw BadFamilyParameters("dprofile theta size mismatch");
            m = dprofile_member(config, std::move(theta));
            break;
        }
        case FamilyTag::All:
            throw BadFamilyParameters("unresolved composite family");
    }
    m.index = index;
    return m;
}

namespace {

CorpusEntry entry_from_member(FamilyMember m) {
    CorpusEntry e;
    e.model = std::move(m.model);
    e.bounds = m.bounds;
    e.kinks = m.kinks;
    e.deriv_extrema_hints = std::move(m.kinks);
    e.name = std::move(m.name);
    return e;
}

CorpusEntry cubic_entry(const Interval& iv, double c0, double c1, double c2, double c3,
                        int id) {
    CorpusEntry e;
    e.model.domain = iv;
    e.model.eval = [c0, c1, c2, c3](double t) { return c0 + t * (c1 + t * (c2 + t * c3)); };
    e.model.deriv = [c1, c2, c3](double t) { return c1 + t * (2.0 * c2 + 3.0 * c3 * t); };
    // g' is quadratic: extremes at the endpoints or at its vertex.
    double lo = std::min(e.model.deriv(iv.a), e.model.deriv(iv.b));
    double hi = std::max(e.model.deriv(iv.a), e.model.deriv(iv.b));
    if (c3 != 0.0) {
        const double vertex = -c2 / (3.0 * c3);
        if (vertex > iv.a && vertex < iv.b) {
            const double v = e.model.deriv(vertex);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            e.deriv_extrema_hints.push_back(vertex);
        }
    }
    e.bounds = DerivativeBounds{lo, hi, Provenance::Exact};
    e.name = "cubic#" + std::to_string(id);
    e.model.description = e.name;
    return e;
}

Interval draw_interval(std::mt19937_64& rng) {
    const double a = uniform(rng, -3.0, 3.0);
    const double w = uniform(rng, 0.4, 3.0);
    return Interval{a, a + w};
}

}  // namespace

std::vector<CorpusEntry> default_corpus() {
    constexpr std::uint64_t kCorpusSeed = 0x5eedc0de2024ULL;
    std::vector<CorpusEntry> out;
    out.reserve(200);

    FamilyConfig canonical_cfg;
    canonical_cfg.tag = FamilyTag::Canonical;
    for (int i = 0; i < 3; ++i)
        out.push_back(entry_from_member(sample_family(canonical_cfg, 0, i)));

    for (int i = 0; i < 60; ++i) {
        auto rng = engine_for(kCorpusSeed, 11, static_cast<std::uint64_t>(i));
        FamilyConfig cfg;
        cfg.tag = FamilyTag::Quadratic;
        cfg.domain = draw_interval(rng);
        cfg.coeff_lo = -2.0;
        cfg.coeff_hi = 2.0;
        std::vector<double> theta(3);
        for (double& c : theta) c = uniform(rng, cfg.coeff_lo, cfg.coeff_hi);
        auto e = entry_from_member(quadratic_member(cfg, std::move(theta)));
        e.name = "quadratic#" + std::to_string(i);
        out.push_back(std::move(e));
    }

    for (int i = 0; i < 57; ++i) {
        auto rng = engine_for(kCorpusSeed, 12, static_cast<std::uint64_t>(i));
        const Interval iv = draw_interval(rng);
        const double c0 = uniform(rng, -2.0, 2.0);
        const double c1 = uniform(rng, -2.0, 2.0);
        const double c2 = uniform(rng, -1.5, 1.5);
        const double c3 = uniform(rng, -1.0, 1.0);
        out.push_back(cubic_entry(iv, c0, c1, c2, c3, i));
    }

    for (int i = 0; i < 80; ++i) {
        auto rng = engine_for(kCorpusSeed, 13, static_cast<std::uint64_t>(i));
        FamilyConfig cfg;
        cfg.tag = FamilyTag::DProfile;
        cfg.domain = draw_interval(rng);
        cfg.dprofile_nodes = 4 + static_cast<int>(uniform(rng, 0.0, 4.999));
        cfg.clamp_lo = uniform(rng, -2.0, 1.0);
        cfg.clamp_hi = cfg.clamp_lo + uniform(rng, 0.2, 2.5);
        std::vector<double> values(cfg.dprofile_nodes);
        for (double& v : values) v = uniform(rng, cfg.clamp_lo, cfg.clamp_hi);
        auto e = entry_from_member(dprofile_member(cfg, std::move(values)));
        e.name = "dprofile#" + std::to_string(i);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<CorpusEntry> normalized_corpus(const Interval& iv) {
    constexpr std::uint64_t kCorpusSeed = 0x5eedc0de2025ULL;
    const double d = iv.width();
    std::vector<CorpusEntry> out;
    out.reserve(50);

    // Canonical members rescaled so g' lands in [0, d]: d^2 * g((t-a)/d).
    FamilyConfig canonical_cfg;
    canonical_cfg.tag = FamilyTag::Canonical;
    for (int i = 0; i < 3; ++i) {
        FamilyMember m = sample_family(canonical_cfg, 0, i);
        CorpusEntry e;
        e.model.domain = iv;
        e.model.eval = [f = m.model.eval, a = iv.a, d](double t) {
            return d * d * f((t - a) / d);
        };
        e.model.deriv = [fp = m.model.deriv, a = iv.a, d](double t) {
            return d * fp((t - a) / d);
        };
        e.bounds = DerivativeBounds{0.0, d, Provenance::Exact};
        for (double k : m.kinks) e.kinks.push_back(iv.a + d * k);
        e.deriv_extrema_hints = e.kinks;
        e.name = m.name;
        e.model.description = e.name;
        out.push_back(std::move(e));
    }

    for (int i = 0; i < 27; ++i) {
        auto rng = engine_for(kCorpusSeed, 21, static_cast<std::uint64_t>(i));
        FamilyConfig cfg;
        cfg.tag = FamilyTag::DProfile;
        cfg.domain = iv;
        cfg.dprofile_nodes = 4 + static_cast<int>(uniform(rng, 0.0, 4.999));
        cfg.normalized_derivative = true;
        std::vector<double> values(cfg.dprofile_nodes);
        for (double& v : values) v = uniform(rng, 0.0, d);
        auto e = entry_from_member(dprofile_member(cfg, std::move(values)));
        e.name = "dprofile#" + std::to_string(i);
        out.push_back(std::move(e));
    }

    for (int i = 0; i < 20; ++i) {
        auto rng = engine_for(kCorpusSeed, 22, static_cast<std::uint64_t>(i));
        FamilyConfig cfg;
        cfg.tag = FamilyTag::Quadratic;
        cfg.domain = iv;
        cfg.normalized_derivative = true;
        std::vector<double> theta = {uniform(rng, -1.0, 1.0), uniform(rng, 0.0, 1.0),
                                     uniform(rng, 0.0, 1.0)};
        auto e = entry_from_member(quadratic_member(cfg, std::move(theta)));
        e.name = "quadratic#" + std::to_string(i);
        out.push_back(std::move(e));
    }
    return out;
}

CorpusEntry remap_to_unit(const CorpusEntry& entry) {
    const Interval iv = entry.model.domain;
    const double d = iv.width();
    CorpusEntry e;
    e.model.domain = Interval{0.0, 1.0};
    e.model.eval = [f = entry.model.eval, a = iv.a, d](double s) { return f(a + d * s); };
    e.model.deriv = [fp = entry.model.deriv, a = iv.a, d](double s) {
        return d * fp(a + d * s);
    };
    e.bounds = DerivativeBounds{d * entry.bounds.lo, d * entry.bounds.hi,
                                entry.bounds.provenance};
    for (double k : entry.kinks) e.kinks.push_back((k - iv.a) / d);
    for (double k : entry.deriv_extrema_hints) e.deriv_extrema_hints.push_back((k - iv.a) / d);
    e.name = entry.name + "@unit";
    e.model.description = e.name;
    return e;
}

}  // namespace quadbound
