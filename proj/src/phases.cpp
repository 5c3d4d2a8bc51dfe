#include "msg/phases.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "msg/error.hpp"

namespace msg {

namespace {

template <class Scalar>
double to_double(const Scalar& x) {
    if constexpr (std::is_same_v<Scalar, double>)
        return x;
    else
        return x.template convert_to<double>();
}

template <class Scalar>
Eigen::Vector3d to_double(const Vec3<Scalar>& v) {
    return {to_double(v[0]), to_double(v[1]), to_double(v[2])};
}

template <class Scalar>
Scalar squared_distance(const Vec3<Scalar>& a, const Vec3<Scalar>& b) {
    return (a - b).squaredNorm();
}

std::pair<int, int> ordered(int a, int b) { return std::minmax(a, b); }

}  // namespace

bool is_bilinear(PhaseOp op) { return op != PhaseOp::sum; }

template <class Scalar>
Vec3<Scalar> apply_op(PhaseOp op, const Vec3<Scalar>& a, const Vec3<Scalar>& b) {
    switch (op) {
        case PhaseOp::cross: return a.cross(b);
        case PhaseOp::componentwise: return a.cwiseProduct(b);
        case PhaseOp::sum: return a + b;
    }
    throw InvalidInput("unknown phase operation");
}

template <class Scalar>
Eigen::Vector3d SurdVector<Scalar>::approx() const {
    return to_double(numerator) / std::sqrt(to_double(radicand));
}

template <class Scalar>
void validate(const GraphPhase<Scalar>& ph) {
    const int nv = ph.graph.vertex_count();
    require(static_cast<int>(ph.omega.size()) == nv, "one vector per vertex");
    require(static_cast<int>(ph.labels.size()) == nv, "one label per vertex");
    require(ph.graph.is_simple(), "phases need a simple graph");
    std::set<std::string> seen(ph.labels.begin(), ph.labels.end());
    require(static_cast<int>(seen.size()) == nv, "vertex labels must be distinct");
    for (const auto& e : ph.graph.edges())
        require(squared_distance(ph.omega[e.tail], ph.omega[e.head]) != 0,
                "adjacent vertices " + ph.labels[e.tail] + " and " + ph.labels[e.head] + " coincide");
}

template <class Scalar>
GraphPhase<Scalar> make_phase(Multigraph g, std::vector<Vec3<Scalar>> omega, PhaseOp op, std::vector<std::string> labels) {
    if (labels.empty())
        for (int v = 0; v < g.vertex_count(); ++v) labels.push_back("v" + std::to_string(v));
    GraphPhase<Scalar> ph{std::move(labels), std::move(g), std::move(omega), op};
    validate(ph);
    return ph;
}

template <class Scalar>
PhaseMatrices<Scalar> phase_matrices(const GraphPhase<Scalar>& ph, LambdaNorm norm) {
    validate(ph);
    if constexpr (!std::is_same_v<Scalar, double>)
        require(norm == LambdaNorm::squared, "the unsquared form has no exact representation");
    const int p = ph.graph.vertex_count();
    PhaseMatrices<Scalar> out{SurdMatrix<Scalar>(p), VectorMatrix<Scalar>(p, Vec3<Scalar>::Zero())};
    for (const auto& e : ph.graph.edges()) {
        for (auto [i, j] : {std::pair{e.tail, e.head}, std::pair{e.head, e.tail}}) {
            const Scalar d2 = squared_distance(ph.omega[i], ph.omega[j]);
            out.v(i, j) = {ph.omega[i], d2};
            const Vec3<Scalar> product = apply_op(ph.op, ph.omega[i], ph.omega[j]);
            if constexpr (std::is_same_v<Scalar, double>)
                out.lambda(i, j) = product / (norm == LambdaNorm::squared ? d2 : std::sqrt(d2));
            else
                out.lambda(i, j) = product / d2;
        }
    }
    return out;
}

template <class Scalar>
VectorMatrix<Scalar> star_product(const SurdMatrix<Scalar>& a, const SurdMatrix<Scalar>& b, PhaseOp op) {
    require(a.size == b.size, "star product needs equal sizes");
    VectorMatrix<Scalar> out(a.size, Vec3<Scalar>::Zero());
    for (int i = 0; i < a.size; ++i)
        for (int j = 0; j < a.size; ++j) {
            const auto &x = a(i, j), &y = b(i, j);
            if constexpr (std::is_same_v<Scalar, double>) {
                out(i, j) = is_bilinear(op) ? Vec3<Scalar>(apply_op(op, x.numerator, y.numerator) /
                                                           std::sqrt(x.radicand * y.radicand))
                                            : Vec3<Scalar>(apply_op<double>(op, x.approx(), y.approx()));
            } else {
                require(is_bilinear(op), "exact star product needs a bilinear operation");
                // √(r·s) is rational here only when r = s, which holds for V and Vᵗ.
                require(x.radicand == y.radicand, "exact star product needs matching radicands");
                out(i, j) = apply_op(op, x.numerator, y.numerator) / x.radicand;
            }
        }
    return out;
}

template <class Scalar>
double verify_star_identity(const GraphPhase<Scalar>& ph, LambdaNorm norm) {
    const auto m = phase_matrices(ph, norm);
    const auto star = star_product(m.v, transpose(m.v), ph.op);
    double worst = 0;
    for (std::size_t k = 0; k < star.entries.size(); ++k) {
        const Vec3<Scalar> diff = star.entries[k] - m.lambda.entries[k];
        if constexpr (!std::is_same_v<Scalar, double>)
            if (diff == Vec3<Scalar>::Zero()) continue;
        const double scale = std::max(1.0, to_double(m.lambda.entries[k]).norm());
        worst = std::max(worst, to_double(diff).norm() / scale);
    }
    return worst;
}

template <class Scalar>
GraphPhase<Scalar> add_phases(const GraphPhase<Scalar>& first, const GraphPhase<Scalar>& second, PhaseOp vertex_op,
                              PhaseOp edge_op) {
    validate(first);
    validate(second);
    GraphPhase<Scalar> out{first.labels, Multigraph(), first.omega, edge_op};
    std::map<std::string, int> index;
    for (std::size_t v = 0; v < first.labels.size(); ++v) index.emplace(first.labels[v], static_cast<int>(v));
    std::vector<int> from_second;
    for (std::size_t v = 0; v < second.labels.size(); ++v) {
        const auto [it, fresh] = index.emplace(second.labels[v], static_cast<int>(out.labels.size()));
        if (fresh) {
            out.labels.push_back(second.labels[v]);
            out.omega.push_back(second.omega[v]);
        } else {
            out.omega[it->second] = apply_op(vertex_op, out.omega[it->second], second.omega[v]);
        }
        from_second.push_back(it->second);
    }
    std::set<std::pair<int, int>> edges;
    for (const auto& e : first.graph.edges()) edges.insert(ordered(e.tail, e.head));
    for (const auto& e : second.graph.edges()) edges.insert(ordered(from_second[e.tail], from_second[e.head]));
    out.graph = Multigraph(static_cast<int>(out.labels.size()));
    for (const auto& [u, v] : edges) out.graph.add_edge(u, v);
    validate(out);
    return out;
}

template <class Scalar>
bool same_phase(const GraphPhase<Scalar>& a, const GraphPhase<Scalar>& b) {
    if (a.op != b.op || a.labels.size() != b.labels.size()) return false;
    std::map<std::string, int> where;
    for (std::size_t v = 0; v < b.labels.size(); ++v) where.emplace(b.labels[v], static_cast<int>(v));
    std::vector<int> to_b;
    for (std::size_t v = 0; v < a.labels.size(); ++v) {
        const auto it = where.find(a.labels[v]);
        if (it == where.end() || a.omega[v] != b.omega[it->second]) return false;
        to_b.push_back(it->second);
    }
    std::set<std::pair<int, int>> ea, eb;
    for (const auto& e : a.graph.edges()) ea.insert(ordered(to_b[e.tail], to_b[e.head]));
    for (const auto& e : b.graph.edges()) eb.insert(ordered(e.tail, e.head));
    return ea == eb;
}

template <class Scalar>
Vec3<Scalar> capacity(const GraphPhase<Scalar>& ph) {
    Vec3<Scalar> total = Vec3<Scalar>::Zero();
    for (const auto& w : ph.omega) total += w;
    return total;
}

template <class Scalar>
double entropy(const GraphPhase<Scalar>& ph, EntropyNorm kind) {
    double total = 0;
    for (std::size_t v = 0; v < ph.omega.size(); ++v) {
        const Scalar n2 = ph.omega[v].squaredNorm();
        require(n2 != 0, "entropy needs nonzero vectors; vertex " + ph.labels.at(v) + " is zero");
        const double log_n2 = std::log(to_double(n2));
        total += kind == EntropyNorm::norm ? log_n2 / 2 : log_n2;
    }
    return total;
}

template <class Scalar>
GraphPhase<Scalar> transform_phase(const GraphPhase<Scalar>& ph, const Eigen::Matrix<Scalar, 3, 3>& linear,
                                   const Vec3<Scalar>& shift) {
    GraphPhase<Scalar> out = ph;
    // Row by row: Eigen's general product path does not accept the multiprecision scalar.
    for (auto& w : out.omega) {
        const Vec3<Scalar> old = w;
        for (int r = 0; r < 3; ++r) w[r] = linear(r, 0) * old[0] + linear(r, 1) * old[1] + linear(r, 2) * old[2] + shift[r];
    }
    validate(out);
    return out;
}

GraphPhase<double> AffinePhaseFamily::at(double t) const {
    require(base.size() == direction.size(), "family needs one direction per vertex");
    std::vector<Vec3<double>> omega;
    for (std::size_t v = 0; v < base.size(); ++v) omega.push_back(base[v] + t * direction[v]);
    return make_phase(graph, std::move(omega), PhaseOp::cross);
}

DifferentialReport differential_check(const AffinePhaseFamily& family, double t, double step, EntropyNorm kind) {
    require(step > 0, "step must be positive");
    DifferentialReport r;
    const auto here = family.at(t), ahead = family.at(t + step), behind = family.at(t - step);
    r.capacity_numeric = (capacity(ahead) - capacity(behind)) / (2 * step);
    r.entropy_numeric = (entropy(ahead, kind) - entropy(behind, kind)) / (2 * step);
    r.capacity_analytic = Eigen::Vector3d::Zero();
    const double factor = kind == EntropyNorm::norm ? 1.0 : 2.0;
    for (std::size_t v = 0; v < family.direction.size(); ++v) {
        r.capacity_analytic += family.direction[v];
        // d/dt log‖w‖ = (w · w') / ‖w‖²
        r.entropy_analytic += factor * here.omega[v].dot(family.direction[v]) / here.omega[v].squaredNorm();
    }
    r.capacity_deviation = (r.capacity_numeric - r.capacity_analytic).norm();
    r.entropy_deviation = std::abs(r.entropy_numeric - r.entropy_analytic);
    return r;
}

#define MSG_PHASE_INSTANTIATE(S)                                                                                 \
    template Vec3<S> apply_op<S>(PhaseOp, const Vec3<S>&, const Vec3<S>&);                                   \
    template struct SurdVector<S>;                                                                           \
    template void validate<S>(const GraphPhase<S>&);                                                         \
    template GraphPhase<S> make_phase<S>(Multigraph, std::vector<Vec3<S>>, PhaseOp, std::vector<std::string>); \
    template PhaseMatrices<S> phase_matrices<S>(const GraphPhase<S>&, LambdaNorm);                           \
    template VectorMatrix<S> star_product<S>(const SurdMatrix<S>&, const SurdMatrix<S>&, PhaseOp);           \
    template double verify_star_identity<S>(const GraphPhase<S>&, LambdaNorm);                               \
    template GraphPhase<S> add_phases<S>(const GraphPhase<S>&, const GraphPhase<S>&, PhaseOp, PhaseOp);      \
    template bool same_phase<S>(const GraphPhase<S>&, const GraphPhase<S>&);                                 \
    template Vec3<S> capacity<S>(const GraphPhase<S>&);                                                      \
    template double entropy<S>(const GraphPhase<S>&, EntropyNorm);                                           \
    template GraphPhase<S> transform_phase<S>(const GraphPhase<S>&, const Eigen::Matrix<S, 3, 3>&, const Vec3<S>&);

MSG_PHASE_INSTANTIATE(double)
MSG_PHASE_INSTANTIATE(Rational)

}  // namespace msg
