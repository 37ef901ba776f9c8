#include "swipt/allocator.hpp"
#include "swipt/baselines.hpp"
#include "swipt/channel.hpp"
#include "swipt/error.hpp"
#include "swipt/metrics.hpp"
#include "swipt/oracle.hpp"
#include "swipt/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace swipt;

namespace {

Instance make_instance(std::vector<double> gains, std::vector<double> harvest, double p_max,
                       double eta) {
    Instance inst;
    inst.gains = std::move(gains);
    inst.harvest = std::move(harvest);
    inst.p_max = p_max;
    inst.eta = eta;
    inst.validate();
    return inst;
}

}  // namespace

PYBIND11_MODULE(swipt_py, m) {
    m.doc() = "Optimal power allocation for SWIPT distributed antenna systems with grid trading";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<InfeasibleWetError>(m, "InfeasibleWetError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);

    py::enum_<RauTag>(m, "RauTag")
        .value("FullPower", RauTag::FullPower)
        .value("ZeroPower", RauTag::ZeroPower)
        .value("Charging", RauTag::Charging)
        .value("Discharging", RauTag::Discharging)
        .value("Passive", RauTag::Passive);

    py::enum_<Scenario>(m, "Scenario")
        .value("Profitable", Scenario::Profitable)
        .value("Neutral", Scenario::Neutral);

    py::class_<Instance>(m, "Instance")
        .def(py::init(&make_instance), py::arg("gains"), py::arg("harvest"), py::arg("p_max"),
             py::arg("eta"))
        .def_readonly("gains", &Instance::gains)
        .def_readonly("harvest", &Instance::harvest)
        .def_readonly("p_max", &Instance::p_max)
        .def_readonly("eta", &Instance::eta)
        .def("__len__", &Instance::size);

    py::class_<Allocation>(m, "Allocation")
        .def_readonly("powers", &Allocation::powers)
        .def_property_readonly("charge", [](const Allocation& a) { return a.trade.charge; })
        .def_property_readonly("discharge", [](const Allocation& a) { return a.trade.discharge; })
        .def_property_readonly("states", [](const Allocation& a) { return a.trade.states; })
        .def_property_readonly("sum_state", [](const Allocation& a) { return a.trade.sum_state(); })
        .def_readonly("kappa_g", &Allocation::kappa_g)
        .def_readonly("kappa_l", &Allocation::kappa_l)
        .def_readonly("classification", &Allocation::classification)
        .def_readonly("scenario", &Allocation::scenario)
        .def_readonly("objective", &Allocation::objective);

    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("powers", &OracleResult::powers)
        .def_readonly("objective", &OracleResult::objective)
        .def_readonly("converged", &OracleResult::converged)
        .def_readonly("iterations", &OracleResult::iterations);

    m.def("optimal_allocation", &optimal_allocation, py::arg("instance"));
    m.def("greedy_allocation", &greedy_allocation, py::arg("instance"));
    m.def("waterfilling_allocation", &waterfilling_allocation, py::arg("instance"));
    m.def("profitable_full_power_test", &profitable_full_power_test, py::arg("instance"));
    m.def(
        "objective_value",
        [](const std::vector<double>& powers, const std::vector<double>& gains) {
            return objective_value(powers, gains);
        },
        py::arg("powers"), py::arg("gains"));
    m.def(
        "threshold_power",
        [](double gain, double harvest, double kappa_g, double eta) {
            const auto d = threshold_power(gain, harvest, kappa_g, eta);
            return py::make_tuple(d.power, d.tag);
        },
        py::arg("gain"), py::arg("harvest"), py::arg("kappa_g"), py::arg("eta"));
    m.def(
        "audit_allocation",
        [](const Instance& inst, const Allocation& a) { return audit_allocation(inst, a); },
        py::arg("instance"), py::arg("allocation"));

    m.def(
        "channel_gains",
        [](std::size_t n, std::size_t m_antennas, double dist_low, double dist_high, double alpha,
           std::uint64_t seed) {
            const auto g = effective_gains(
                generate_realization(n, m_antennas, dist_low, dist_high, alpha, seed));
            return py::make_tuple(g.gains, g.order);
        },
        py::arg("n"), py::arg("m"), py::arg("dist_low") = 10.0, py::arg("dist_high") = 50.0,
        py::arg("alpha") = 2.0, py::arg("seed") = 1);
    m.def(
        "sort_descending",
        [](const std::vector<double>& gains) {
            const auto g = sort_descending(gains);
            return py::make_tuple(g.gains, g.order);
        },
        py::arg("gains"));

    m.def("wet_energy", &wet_energy, py::arg("objective"), py::arg("rho"), py::arg("xi"),
          py::arg("sigma2"));
    m.def("wit_rate", &wit_rate, py::arg("objective"), py::arg("rho"), py::arg("sigma2"),
          py::arg("tau2"));
    m.def("ps_ratio_for_wet", &ps_ratio_for_wet, py::arg("q_min"), py::arg("objective"),
          py::arg("xi"), py::arg("sigma2"));
    m.def(
        "rate_energy_curve",
        [](double objective, double xi, double sigma2, double tau2, std::size_t n_points) {
            py::list out;
            for (const auto& p : rate_energy_curve(objective, xi, sigma2, tau2, n_points)) {
                out.append(py::make_tuple(p.rho, p.wit, p.wet));
            }
            return out;
        },
        py::arg("objective"), py::arg("xi") = 0.5, py::arg("sigma2") = 1.0,
        py::arg("tau2") = 1.0, py::arg("n_points") = 101);

    m.def("oracle_grid_search", &oracle_grid_search, py::arg("instance"),
          py::arg("steps_per_axis") = 21);
    m.def("oracle_ascent", &oracle_ascent, py::arg("instance"), py::arg("tol") = 1e-12,
          py::arg("max_iterations") = 200000);
}
