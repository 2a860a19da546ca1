#include "trp/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "trp/error.hpp"

namespace trp {

namespace {

// Dormand-Prince 8(5,3) tableau (Hairer, Norsett & Wanner, DOP853).
constexpr int kStages = 12;

constexpr double kC[kStages] = {
    0.0,
    0.526001519587677318785587544488e-01,
    0.789002279381515978178381316732e-01,
    0.118350341907227396726757197510,
    0.281649658092772603273242802490,
    0.333333333333333333333333333333,
    0.25,
    0.307692307692307692307692307692,
    0.651282051282051282051282051282,
    0.6,
    0.857142857142857142857142857142,
    1.0,
};

constexpr double kA[kStages][kStages] = {
    {},
    {5.26001519587677318785587544488e-2},
    {1.97250569845378994544595329183e-2, 5.91751709536136983633785987549e-2},
    {2.95875854768068491816892993775e-2, 0.0, 8.87627564304205475450678981324e-2},
    {2.41365134159266685502369798665e-1, 0.0, -8.84549479328286085344864962717e-1,
     9.24834003261792003115737966543e-1},
    {3.7037037037037037037037037037e-2, 0.0, 0.0, 1.70828608729473871279604482173e-1,
     1.25467687566822425016691814123e-1},
    {3.7109375e-2, 0.0, 0.0, 1.70252211019544039314978060272e-1, 6.02165389804559606850219397283e-2,
     -1.7578125e-2},
    {3.70920001185047927108779319836e-2, 0.0, 0.0, 1.70383925712239993810214054705e-1,
     1.07262030446373284651809199168e-1, -1.53194377486244017527936158236e-2,
     8.27378916381402288758473766002e-3},
    {6.24110958716075717114429577812e-1, 0.0, 0.0, -3.36089262944694129406857109825,
     -8.68219346841726006818189891453e-1, 2.75920996994467083049415600797e1,
     2.01540675504778934086186788979e1, -4.34898841810699588477366255144e1},
    {4.77662536438264365890433908527e-1, 0.0, 0.0, -2.48811461997166764192642586468,
     -5.90290826836842996371446475743e-1, 2.12300514481811942347288949897e1,
     1.52792336328824235832596922938e1, -3.32882109689848629194453265587e1,
     -2.03312017085086261358222928593e-2},
    {-9.3714243008598732571704021658e-1, 0.0, 0.0, 5.18637242884406370830023853209,
     1.09143734899672957818500254654, -8.14978701074692612513997267357,
     -1.85200656599969598641566180701e1, 2.27394870993505042818970056734e1,
     2.49360555267965238987089396762, -3.0467644718982195003823669022},
    {2.27331014751653820792359768449, 0.0, 0.0, -1.05344954667372501984066689879e1,
     -2.00087205822486249909675718444, -1.79589318631187989172765950534e1,
     2.79488845294199600508499808837e1, -2.85899827713502369474065508674,
     -8.87285693353062954433549289258, 1.23605671757943030647266201528e1,
     6.43392746015763530355970484046e-1},
};

constexpr double kB[kStages] = {
    5.42937341165687622380535766363e-2, 0.0, 0.0, 0.0, 0.0,
    4.45031289275240888144113950566,    1.89151789931450038304281599044,
    -5.8012039600105847814672114227,    3.1116436695781989440891606237e-1,
    -1.52160949662516078556178806805e-1, 2.01365400804030348374776537501e-1,
    4.47106157277725905176885569043e-2,
};

// Fifth-order error weights.
constexpr double kE5[kStages] = {
    0.1312004499419488073250102996e-1, 0.0, 0.0, 0.0, 0.0,
    -0.1225156446376204440720569753e+1, -0.4957589496572501915214079952,
    0.1664377182454986536961530415e+1,  -0.3503288487499736816886487290,
    0.3341791187130174790297318841,     0.8192320648511571246570742613e-1,
    -0.2235530786388629525884427845e-1,
};

// Third-order error weights: b minus the embedded third-order solution.
constexpr double kE3[kStages] = {
    kB[0] - 0.244094488188976377952755905512,
    kB[1], kB[2], kB[3], kB[4], kB[5], kB[6], kB[7],
    kB[8] - 0.733846688281611857341361741547,
    kB[9], kB[10],
    kB[11] - 0.220588235294117647058823529412e-1,
};

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 6.0;
constexpr double kBeta = 0.04;                  // integral gain
constexpr double kAlpha = 1.0 / 8.0 - 0.2 * kBeta;  // proportional exponent

template <std::size_t M>
using State = std::array<complex, M>;

// dy = rhs(t, y); on_accept(y) runs after every accepted step.
template <std::size_t M, class Rhs, class OnAccept>
std::size_t integrate(State<M>& y, Interval span, const IntegratorConfig& cfg, Rhs&& rhs,
                      OnAccept&& on_accept, std::size_t& rejected) {
  validate(cfg);
  double t = span.begin;
  const double t_end = span.end;
  const double direction = t_end >= t ? 1.0 : -1.0;
  double h_abs = cfg.initial_step > 0.0 ? cfg.initial_step : std::abs(span.length()) / 1e4;
  double err_prev = 1e-4;
  bool last_rejected = false;
  std::size_t steps = 0;
  rejected = 0;

  std::array<State<M>, kStages> k;
  rhs(t, y, k[0]);
  State<M> stage;
  State<M> y_new;
  State<M> f_new;

  while (direction * (t_end - t) > 0.0) {
    if (steps >= cfg.max_steps) {
      std::ostringstream os;
      os << "reached " << cfg.max_steps << " steps at tau = " << t;
      throw Error(ErrorCode::step_limit_exceeded, os.str());
    }
    const double min_step =
        10.0 * std::abs(std::nextafter(t, direction * std::numeric_limits<double>::infinity()) - t);
    if (h_abs < min_step) {
      std::ostringstream os;
      os << "step size underflow at tau = " << t;
      throw Error(ErrorCode::tolerance_unreachable, os.str());
    }

    double h = direction * h_abs;
    double t_new = t + h;
    if (direction * (t_new - t_end) > 0.0) t_new = t_end;
    h = t_new - t;

    for (int s = 1; s < kStages; ++s) {
      for (std::size_t i = 0; i < M; ++i) {
        complex acc = 0.0;
        for (int j = 0; j < s; ++j) acc += kA[s][j] * k[j][i];
        stage[i] = y[i] + h * acc;
      }
      rhs(t + kC[s] * h, stage, k[s]);
    }

    // Max norm over components of the scaled error, so every entry of U
    // meets the tolerance on its own (an RMS norm lets single entries drift).
    double err5 = 0.0;
    double err3 = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      complex acc = 0.0;
      complex e5 = 0.0;
      complex e3 = 0.0;
      for (int j = 0; j < kStages; ++j) {
        acc += kB[j] * k[j][i];
        e5 += kE5[j] * k[j][i];
        e3 += kE3[j] * k[j][i];
      }
      y_new[i] = y[i] + h * acc;
      const double scale =
          cfg.abs_tolerance + cfg.rel_tolerance * std::max(std::abs(y[i]), std::abs(y_new[i]));
      const double n5 = std::norm(e5 / scale);
      const double n3 = std::norm(e3 / scale);
      if (std::isnan(n5) || n5 > err5) err5 = n5;  // NaN sticks
      if (std::isnan(n3) || n3 > err3) err3 = n3;
    }
    double err = 0.0;
    if (!(err5 == 0.0 && err3 == 0.0)) {  // NaN falls through to the formula
      err = std::abs(h) * err5 / std::sqrt(err5 + 0.01 * err3);
    }

    if (err <= 1.0) {
      double factor = kMaxFactor;
      if (err > 0.0) {
        factor = kSafety * std::pow(err, -kAlpha) * std::pow(err_prev, kBeta);
        factor = std::clamp(factor, kMinFactor, kMaxFactor);
      }
      if (last_rejected) factor = std::min(factor, 1.0);
      err_prev = std::max(err, 1e-4);
      rhs(t_new, y_new, f_new);
      t = t_new;
      y = y_new;
      k[0] = f_new;
      ++steps;
      last_rejected = false;
      on_accept(y);
      h_abs *= factor;
    } else {
      // NaN errors also land here and shrink the step until underflow.
      const double factor =
          std::isfinite(err) ? std::max(kMinFactor, kSafety * std::pow(err, -1.0 / 8.0)) : kMinFactor;
      h_abs *= factor;
      last_rejected = true;
      ++rejected;
    }
  }
  return steps;
}

}  // namespace

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.rel_tolerance > 0.0) || !(cfg.abs_tolerance > 0.0)) {
    throw Error(ErrorCode::invalid_config, "integrator tolerances must be positive");
  }
  if (cfg.max_steps == 0) {
    throw Error(ErrorCode::invalid_config, "max_steps must be positive");
  }
}

template <std::size_t N>
PropagationResult<N> propagate(const Hamiltonian<N>& h, Interval span, const IntegratorConfig& cfg) {
  PropagationResult<N> out;
  State<N * N> y = Matrix<N>::identity().a;
  auto rhs = [&](double t, const State<N * N>& u, State<N * N>& du) {
    const Matrix<N> hm = h(t);
    Matrix<N> um;
    um.a = u;
    const Matrix<N> prod = hm * um;
    for (std::size_t i = 0; i < N * N; ++i) du[i] = complex(prod.a[i].imag(), -prod.a[i].real());
  };
  auto on_accept = [&](const State<N * N>& u) {
    Matrix<N> um;
    um.a = u;
    out.max_unitarity_defect = std::max(out.max_unitarity_defect, unitarity_defect(um));
  };
  out.steps_taken = integrate<N * N>(y, span, cfg, rhs, on_accept, out.steps_rejected);
  out.u_applied.a = y;
  out.tolerance_used = cfg.rel_tolerance;
  return out;
}

template <std::size_t N>
Vector<N> propagate_state(const Hamiltonian<N>& h, const Vector<N>& psi0, Interval span,
                          const IntegratorConfig& cfg) {
  State<N> y = psi0;
  auto rhs = [&](double t, const State<N>& v, State<N>& dv) {
    const Vector<N> hv = h(t) * v;
    for (std::size_t i = 0; i < N; ++i) dv[i] = complex(hv[i].imag(), -hv[i].real());
  };
  std::size_t rejected = 0;
  integrate<N>(y, span, cfg, rhs, [](const State<N>&) {}, rejected);
  return y;
}

template PropagationResult<2> propagate<2>(const Hamiltonian<2>&, Interval, const IntegratorConfig&);
template PropagationResult<4> propagate<4>(const Hamiltonian<4>&, Interval, const IntegratorConfig&);
template Vector<2> propagate_state<2>(const Hamiltonian<2>&, const Vector<2>&, Interval,
                                      const IntegratorConfig&);
template Vector<4> propagate_state<4>(const Hamiltonian<4>&, const Vector<4>&, Interval,
                                      const IntegratorConfig&);

}  // namespace trp
