#include "geoscan/geodesiccheck.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "geoscan/error.hpp"

namespace geoscan {

namespace {

using Clock = std::chrono::steady_clock;

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

class Deadline {
public:
    explicit Deadline(double seconds) : start_(Clock::now()), limit_(seconds) {}
    void check() const {
        if (seconds_since(start_) > limit_)
            throw SurfaceTimeout("surface check exceeded " + std::to_string(limit_) + " s");
    }

private:
    Clock::time_point start_;
    double limit_;
};

/// Fixed points of a non-identity Mobius map.
std::vector<IdealPoint> fixed_points(const MobiusMatrix& m, double tol) {
    const MobiusMatrix n = m.normalized();
    // c z^2 + (d - a) z - b = 0
    if (std::abs(n.c) <= tol) {
        std::vector<IdealPoint> out{IdealPoint::infinity()};
        if (std::abs(n.d - n.a) > tol) out.push_back(IdealPoint::at(n.b / (n.d - n.a)));
        return out;
    }
    const Complex disc = std::sqrt((n.d - n.a) * (n.d - n.a) + 4.0 * n.b * n.c);
    return {IdealPoint::at((n.a - n.d + disc) / (2.0 * n.c)), IdealPoint::at((n.a - n.d - disc) / (2.0 * n.c))};
}

bool fixes(const MobiusMatrix& m, IdealPoint p, double tol) {
    const MobiusMatrix n = m.normalized();
    if (p.infinite) return std::abs(n.c) <= tol;
    const Complex r = n.c * p.z * p.z + (n.d - n.a) * p.z - n.b;
    return std::abs(r) <= tol * std::max(1.0, std::norm(p.z));
}

NormalCoordinates doubled(const NormalCoordinates& x) {
    NormalCoordinates out = x;
    for (auto& v : out) v *= 2;
    return out;
}

}  // namespace

std::vector<std::vector<int>> trace_test_indices(int n) {
    std::vector<std::vector<int>> out;
    for (int i = 1; i <= n; ++i) out.push_back({i});
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) out.push_back({i, j});
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k) out.push_back({i, j, k});
    return out;
}

std::size_t trace_test_size(int n) {
    const auto m = static_cast<std::size_t>(n);
    return m + m * (m + 1) / 2 + m * (m + 1) * (m + 2) / 6;
}

std::vector<TraceEntry> trace_test_set(const std::vector<MobiusMatrix>& generators) {
    std::vector<TraceEntry> out;
    for (auto& ix : trace_test_indices(static_cast<int>(generators.size()))) {
        MobiusMatrix m = generators[idx(ix[0] - 1)];
        for (std::size_t k = 1; k < ix.size(); ++k) m = m * generators[idx(ix[k] - 1)];
        out.push_back({std::move(ix), m.trace()});
    }
    return out;
}

const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::VolumeTooSmall: return "VolumeTooSmall";
        case VerdictKind::NotFuchsian: return "NotFuchsian";
        case VerdictKind::FuchsianDoubleCover: return "FuchsianDoubleCover";
        case VerdictKind::TotallyGeodesicCandidate: return "TotallyGeodesicCandidate";
        case VerdictKind::NonOrientableTotallyGeodesicCandidate: return "NonOrientableTotallyGeodesicCandidate";
    }
    return "?";
}

const char* to_string(RealnessMode m) {
    return m == RealnessMode::NumericThreshold ? "NumericThreshold" : "CertifiedNegative";
}

const char* to_string(SurfaceStatus s) {
    switch (s) {
        case SurfaceStatus::Checked: return "checked";
        case SurfaceStatus::LetscherSkipped: return "letscher_skipped";
        case SurfaceStatus::TimedOut: return "timed_out";
    }
    return "?";
}

SurfaceGroup surface_group(const IdealTriangulation& t, const ManifoldPresentation& mp, const NormalCoordinates& x) {
    SurfaceComplex complex = build_surface_complex(t, x);
    if (complex.disks.empty()) throw InputError("empty surface");
    if (complex.num_components != 1) throw InputError("surface is disconnected");
    SurfacePresentation presentation = surface_presentation(t, complex);
    SimplifiedPresentation simplified = simplify_presentation(presentation.presentation);
    PresentationVerdict verdict = verify_surface_presentation(presentation.presentation, complex.orientable);
    const auto words = embed_surface_generators(mp.skeleton, complex, presentation.skeleton);
    std::vector<Word> kept;
    for (int gen : simplified.surviving) kept.push_back(words[idx(gen - 1)]);
    SurfaceGroup g{std::move(complex), std::move(presentation), std::move(simplified), std::move(verdict), std::move(kept)};
    return g;
}

bool share_fixed_point(const std::vector<MobiusMatrix>& generators, double tol) {
    const MobiusMatrix* first = nullptr;
    for (const auto& m : generators)
        if (m.normalized().distance_to_pm_identity() > tol) {
            first = &m;
            break;
        }
    if (first == nullptr) return true;
    for (const auto& p : fixed_points(*first, tol)) {
        if (std::all_of(generators.begin(), generators.end(), [&](const MobiusMatrix& m) { return fixes(m, p, tol); }))
            return true;
    }
    return false;
}

GeodesicVerdict classify_generators(const std::vector<MobiusMatrix>& generators, double threshold) {
    GeodesicVerdict v;
    v.mode = RealnessMode::NumericThreshold;
    v.traces = trace_test_set(generators);
    v.reducible = share_fixed_point(generators);
    const TraceEntry* worst = nullptr;
    for (const auto& e : v.traces)
        if (worst == nullptr || std::abs(e.trace.imag()) > std::abs(worst->trace.imag())) worst = &e;
    if (worst != nullptr && std::abs(worst->trace.imag()) > threshold) {
        v.kind = VerdictKind::NotFuchsian;
        v.witness_indices = worst->indices;
        v.witness_trace = worst->trace;
        v.witness_imag = std::abs(worst->trace.imag());
    } else {
        v.kind = VerdictKind::TotallyGeodesicCandidate;
    }
    return v;
}

GeodesicVerdict check_surface(const IdealTriangulation& t, const ManifoldPresentation& mp, const Representation& rep,
                              const NormalCoordinates& x, const CheckConfig& config,
                              const ExactRepresentation* exact) {
    const Deadline deadline(config.timeout_s);
    const SurfaceComplex input = build_surface_complex(t, x);
    if (input.disks.empty()) throw InputError("empty surface");
    if (input.num_components != 1) throw InputError("surface is disconnected");

    const NormalCoordinates tested = input.orientable ? x : doubled(x);
    const SurfaceGroup group = surface_group(t, mp, tested);
    deadline.check();

    std::vector<MobiusMatrix> matrices;
    for (const auto& w : group.generator_words) matrices.push_back(evaluate_word(rep, w));
    GeodesicVerdict v = classify_generators(matrices, config.threshold);
    deadline.check();

    if (exact != nullptr && config.certified) {
        v.mode = RealnessMode::CertifiedNegative;
        v.kind = VerdictKind::TotallyGeodesicCandidate;
        v.witness_indices.clear();
        v.witness_trace = {};
        v.witness_imag = 0;
        std::vector<ExactMatrix> gens;
        for (const auto& w : group.generator_words) gens.push_back(evaluate_word(*exact, w));
        for (const auto& entry : v.traces) {
            deadline.check();
            ExactMatrix m = gens[idx(entry.indices[0] - 1)];
            for (std::size_t k = 1; k < entry.indices.size(); ++k) m = m * gens[idx(entry.indices[k] - 1)];
            const FieldElement q = m.trace_squared_over_det();
            const Realness r = embedding_is_real(q, 6, config.threshold);
            bool nonreal = r == Realness::CertifiedNotReal;
            if (r == Realness::NumericallyReal && !q.is_rational()) nonreal = q.evaluate().re.strictly_negative();
            if (q.is_rational()) nonreal = !q.is_zero() && q.coefficients()[0] < 0;
            if (r == Realness::Inconclusive) ++v.inconclusive;
            if (nonreal) {
                v.kind = VerdictKind::NotFuchsian;
                v.witness_indices = entry.indices;
                v.witness_trace = entry.trace;
                v.witness_imag = std::abs(entry.trace.imag());
                break;
            }
        }
    }

    v.tested = tested;
    v.input_orientable = input.orientable;
    v.euler_characteristic = input.euler_characteristic;
    v.surface_generators = static_cast<int>(matrices.size());
    v.presentation = group.verdict;
    if (v.kind == VerdictKind::NotFuchsian) return v;
    if (!input.orientable) {
        v.kind = VerdictKind::NonOrientableTotallyGeodesicCandidate;
        return v;
    }
    v.half = halve_if_double(t, x);
    v.kind = v.half ? VerdictKind::FuchsianDoubleCover : VerdictKind::TotallyGeodesicCandidate;
    return v;
}

ScanReport scan_manifold(const IdealTriangulation& t, const CheckConfig& config) {
    ScanReport report;
    report.volume = compute_volume(t);
    report.euler_bound = config.euler_bound_override ? *config.euler_bound_override : euler_bound(report.volume);
    if (report.volume < kNonOrientableVolumeThreshold) {
        report.volume_too_small = true;
        return report;
    }

    const ManifoldPresentation mp = manifold_presentation(t);
    const Representation rep = make_representation(t, mp);
    report.source = rep.source;
    std::optional<ExactRepresentation> exact;
    if (config.certified && t.exact_shapes() && rep.source == RepresentationSource::FromShapes) {
        exact = exact_representation_from_shapes(t, mp);
        report.mode = RealnessMode::CertifiedNegative;
    }

    const auto enum_start = Clock::now();
    const auto surfaces = report.euler_bound > 0 ? enumerate_admissible(t, report.euler_bound, config.limits)
                                                 : std::vector<NormalCoordinates>{};
    report.enumeration_s = seconds_since(enum_start);

    const auto check_start = Clock::now();
    report.surfaces.resize(surfaces.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t i = next++; i < surfaces.size(); i = next++) {
            SurfaceRecord& rec = report.surfaces[i];
            rec.coordinates = surfaces[i];
            const auto start = Clock::now();
            try {
                rec.letscher_edges = letscher_tube_check(t, surfaces[i]);
                if (!rec.letscher_edges.empty()) {
                    rec.status = SurfaceStatus::LetscherSkipped;
                } else {
                    rec.verdict = check_surface(t, mp, rep, surfaces[i], config, exact ? &*exact : nullptr);
                }
            } catch (const SurfaceTimeout&) {
                rec.status = SurfaceStatus::TimedOut;
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
            rec.check_s = seconds_since(start);
        }
    };
    const int threads = std::max(1, std::min<int>(config.threads, static_cast<int>(surfaces.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    report.check_s = seconds_since(check_start);
    return report;
}

}  // namespace geoscan
