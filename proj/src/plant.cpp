#include "dtsim/plant.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <utility>

namespace dtsim {

namespace {

struct Temps {
    double box;
    double heater;
};

Derivatives rates(Temps x, bool heater_on, const PlantParams& p) {
    const double to_air = p.g_heater.mean() * (x.heater - x.box);
    const double to_room = p.g_box.mean() * (x.box - p.t_room.mean());
    const double power = heater_on ? p.v_heater.mean() * p.i_heater.mean() : 0.0;
    return {(to_air - to_room) / p.c_air.mean(), (power - to_air) / p.c_heater.mean()};
}

double spectral_radius(const PlantParams& p) {
    const double a_bb = -(p.g_heater.mean() + p.g_box.mean()) / p.c_air.mean();
    const double a_bh = p.g_heater.mean() / p.c_air.mean();
    const double a_hb = p.g_heater.mean() / p.c_heater.mean();
    const double a_hh = -p.g_heater.mean() / p.c_heater.mean();
    const double tr = a_bb + a_hh;
    const double det = a_bb * a_hh - a_bh * a_hb;
    // The coupling is reciprocal, so the spectrum is real and negative.
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    return (-tr + disc) / 2.0;
}

}  // namespace

const UncertainReal& PlantParams::operator[](Param p) const {
    switch (p) {
        case Param::CAir: return c_air;
        case Param::GBox: return g_box;
        case Param::CHeater: return c_heater;
        case Param::GHeater: return g_heater;
        case Param::VHeater: return v_heater;
        case Param::IHeater: return i_heater;
        case Param::TRoom: return t_room;
    }
    throw std::out_of_range("unknown plant parameter");
}

UncertainReal& PlantParams::operator[](Param p) {
    return const_cast<UncertainReal&>(std::as_const(*this)[p]);
}

PlantParams PlantParams::nominal() const {
    PlantParams out = *this;
    for (std::size_t i = 0; i < kParamCount; ++i) {
        auto& v = out[static_cast<Param>(i)];
        v = UncertainReal(v.mean());
    }
    return out;
}

void PlantParams::validate() const {
    const std::array<std::pair<const char*, const UncertainReal*>, 6> positive{{
        {"c_air", &c_air},
        {"g_box", &g_box},
        {"c_heater", &c_heater},
        {"g_heater", &g_heater},
        {"v_heater", &v_heater},
        {"i_heater", &i_heater},
    }};
    for (const auto& [name, v] : positive) {
        if (!(v->mean() > 0.0) || !std::isfinite(v->mean())) {
            throw std::invalid_argument(fmt::format("plant.{} must be > 0, got {}", name, v->mean()));
        }
    }
    if (!std::isfinite(t_room.mean())) {
        throw std::invalid_argument("plant.t_room must be finite");
    }
}

bool PlantState::is_deterministic() const {
    if (!t_box.is_crisp() || !t_heater.is_crisp() || cov_box_heater != 0.0) {
        return false;
    }
    for (std::size_t i = 0; i < kParamCount; ++i) {
        if (cov_box_param[i] != 0.0 || cov_heater_param[i] != 0.0) {
            return false;
        }
    }
    return true;
}

PlantState PlantState::at_rest(double temperature, double uncertainty, double time) {
    PlantState s;
    s.time = time;
    s.t_box = UncertainReal(temperature, uncertainty);
    s.t_heater = UncertainReal(temperature, uncertainty);
    return s;
}

void SolverConfig::validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument(fmt::format("solver.h must be > 0, got {}", h));
    }
    if (!(k_num >= 0.0)) {
        throw std::invalid_argument(fmt::format("solver.k_num must be >= 0, got {}", k_num));
    }
    if (!(sigma_init >= 0.0)) {
        throw std::invalid_argument(fmt::format("solver.sigma_init must be >= 0, got {}", sigma_init));
    }
}

Derivatives derivatives(const PlantState& state, bool heater_on, const PlantParams& params) {
    return rates({state.t_box.mean(), state.t_heater.mean()}, heater_on, params);
}

PlantState step_gt(const PlantState& state, bool heater_on, const PlantParams& params, double h) {
    if (!state.is_deterministic()) {
        throw std::invalid_argument("measurand state must carry no uncertainty");
    }
    const Temps x{state.t_box.mean(), state.t_heater.mean()};
    const auto k1 = rates(x, heater_on, params);
    const auto k2 = rates({x.box + 0.5 * h * k1.d_box, x.heater + 0.5 * h * k1.d_heater}, heater_on, params);
    const auto k3 = rates({x.box + 0.5 * h * k2.d_box, x.heater + 0.5 * h * k2.d_heater}, heater_on, params);
    const auto k4 = rates({x.box + h * k3.d_box, x.heater + h * k3.d_heater}, heater_on, params);

    const double box = x.box + h / 6.0 * (k1.d_box + 2.0 * k2.d_box + 2.0 * k3.d_box + k4.d_box);
    const double heater =
        x.heater + h / 6.0 * (k1.d_heater + 2.0 * k2.d_heater + 2.0 * k3.d_heater + k4.d_heater);
    if (!std::isfinite(box) || !std::isfinite(heater)) {
        throw SimulationFault(fmt::format("measurand diverged at t={}", state.time));
    }
    PlantState next;
    next.time = state.time + h;
    next.t_box = UncertainReal(box);
    next.t_heater = UncertainReal(heater);
    return next;
}

PlantState step_dt(const PlantState& state, bool heater_on, const PlantParams& params,
                   const SolverConfig& solver) {
    const double h = solver.h;
    const double b = state.t_box.mean();
    const double q = state.t_heater.mean();
    const double ca = params.c_air.mean();
    const double gb = params.g_box.mean();
    const double ch = params.c_heater.mean();
    const double gh = params.g_heater.mean();
    const double on = heater_on ? 1.0 : 0.0;

    const auto f = rates({b, q}, heater_on, params);

    // Jacobian with respect to the state.
    const double f00 = 1.0 + h * (-(gh + gb) / ca);
    const double f01 = h * (gh / ca);
    const double f10 = h * (gh / ch);
    const double f11 = 1.0 + h * (-gh / ch);

    // Jacobian with respect to the parameters, ordered as Param.
    std::array<double, kParamCount> jb{};
    std::array<double, kParamCount> jq{};
    jb[static_cast<std::size_t>(Param::CAir)] = -f.d_box / ca;
    jb[static_cast<std::size_t>(Param::GBox)] = -(b - params.t_room.mean()) / ca;
    jb[static_cast<std::size_t>(Param::GHeater)] = (q - b) / ca;
    jb[static_cast<std::size_t>(Param::TRoom)] = gb / ca;
    jq[static_cast<std::size_t>(Param::CHeater)] = -f.d_heater / ch;
    jq[static_cast<std::size_t>(Param::GHeater)] = -(q - b) / ch;
    jq[static_cast<std::size_t>(Param::VHeater)] = on * params.i_heater.mean() / ch;
    jq[static_cast<std::size_t>(Param::IHeater)] = on * params.v_heater.mean() / ch;

    const double vb = state.t_box.variance();
    const double vq = state.t_heater.variance();
    const double cbq = state.cov_box_heater;

    PlantState next;
    next.time = state.time + h;

    // Pxp' = F Pxp + h Jp Ppp, and the cross term F Pxp Jp^T.
    double cross_bb = 0.0, cross_bq = 0.0, cross_qb = 0.0, cross_qq = 0.0;
    double par_bb = 0.0, par_bq = 0.0, par_qq = 0.0;
    for (std::size_t i = 0; i < kParamCount; ++i) {
        const double var_p = params[static_cast<Param>(i)].variance();
        const double mb = f00 * state.cov_box_param[i] + f01 * state.cov_heater_param[i];
        const double mq = f10 * state.cov_box_param[i] + f11 * state.cov_heater_param[i];
        cross_bb += mb * jb[i];
        cross_bq += mb * jq[i];
        cross_qb += mq * jb[i];
        cross_qq += mq * jq[i];
        par_bb += jb[i] * jb[i] * var_p;
        par_bq += jb[i] * jq[i] * var_p;
        par_qq += jq[i] * jq[i] * var_p;
        next.cov_box_param[i] = mb + h * jb[i] * var_p;
        next.cov_heater_param[i] = mq + h * jq[i] * var_p;
    }

    const double local = solver.k_num * h * h;
    const double q_num = local * local;

    // F Pxx F^T
    const double fp_bb = f00 * f00 * vb + 2.0 * f00 * f01 * cbq + f01 * f01 * vq;
    const double fp_qq = f10 * f10 * vb + 2.0 * f10 * f11 * cbq + f11 * f11 * vq;
    const double fp_bq = f00 * f10 * vb + (f00 * f11 + f01 * f10) * cbq + f01 * f11 * vq;

    const double var_b = fp_bb + 2.0 * h * cross_bb + h * h * par_bb + q_num;
    const double var_q = fp_qq + 2.0 * h * cross_qq + h * h * par_qq + q_num;
    next.cov_box_heater = fp_bq + h * (cross_bq + cross_qb) + h * h * par_bq;

    const double box = b + h * f.d_box;
    const double heater = q + h * f.d_heater;
    if (!std::isfinite(box) || !std::isfinite(heater) || !std::isfinite(var_b) || !std::isfinite(var_q)) {
        throw SimulationFault(fmt::format("twin diverged at t={}", state.time));
    }
    // Rounding can push an exactly-zero variance a hair below zero.
    next.t_box = UncertainReal(box, std::sqrt(std::max(0.0, var_b)));
    next.t_heater = UncertainReal(heater, std::sqrt(std::max(0.0, var_q)));
    return next;
}

PlantState reset_state(const PlantState& state, const UncertainReal& new_t_box) {
    if (new_t_box.std() > state.t_box.std()) {
        throw std::invalid_argument(fmt::format("reset would raise box uncertainty from {} to {}",
                                                state.t_box.std(), new_t_box.std()));
    }
    PlantState next = state;
    const double ratio = state.t_box.std() > 0.0 ? new_t_box.std() / state.t_box.std() : 0.0;
    next.t_box = new_t_box;
    next.cov_box_heater *= ratio;
    for (auto& c : next.cov_box_param) {
        c *= ratio;
    }
    return next;
}

double euler_stability_bound(const PlantParams& params) {
    return 2.0 / spectral_radius(params);
}

double rk4_stability_bound(const PlantParams& params) {
    return 2.785 / spectral_radius(params);
}

double heater_on_fixed_point(const PlantParams& params) {
    return params.t_room.mean() + params.v_heater.mean() * params.i_heater.mean() / params.g_box.mean();
}

}  // namespace dtsim
