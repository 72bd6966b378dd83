#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mabench/coordinated.hpp"
#include "mabench/model.hpp"
#include "mabench/sim.hpp"
#include "mabench/uncoordinated.hpp"

namespace py = pybind11;
using namespace mabench;

namespace {

DeviceSet devices_from(std::vector<double> gains) { return DeviceSet::from_gains(std::move(gains)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Uplink multiple-access throughput models (C++ core)";

  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);

  py::enum_<Scheme>(m, "Scheme")
      .value("FDMA", Scheme::Fdma)
      .value("TDMA", Scheme::Tdma)
      .value("NOMA", Scheme::Noma);

  py::enum_<Coordination>(m, "Coordination")
      .value("COORDINATED", Coordination::Coordinated)
      .value("UNCOORDINATED", Coordination::Uncoordinated);

  py::enum_<TargetSnrForm>(m, "TargetSnrForm")
      .value("AS_PRINTED", TargetSnrForm::AsPrinted)
      .value("REDERIVED", TargetSnrForm::Rederived);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("bandwidth_hz", &SystemParams::bandwidth_hz)
      .def_readwrite("slot_s", &SystemParams::slot_s)
      .def_readwrite("payload_bits", &SystemParams::payload_bits)
      .def_readwrite("ref_snr", &SystemParams::ref_snr)
      .def_readwrite("pathloss_exp", &SystemParams::pathloss_exp)
      .def_readwrite("min_slot_s", &SystemParams::min_slot_s)
      .def_readwrite("min_subchannel_hz", &SystemParams::min_subchannel_hz)
      .def("validate", &SystemParams::validate);

  py::class_<CoordinatedAllocation>(m, "CoordinatedAllocation")
      .def_readonly("scheme", &CoordinatedAllocation::scheme)
      .def_readonly("admitted", &CoordinatedAllocation::admitted)
      .def_property_readonly("resources",
                             [](const CoordinatedAllocation& a) {
                               std::vector<double> r;
                               for (const auto& d : a.per_device) r.push_back(d.resource);
                               return r;
                             })
      .def("resource_used", &CoordinatedAllocation::resource_used);

  py::class_<UncoordinatedDesign>(m, "UncoordinatedDesign")
      .def(py::init<>())
      .def(py::init([](Scheme s, double p, std::size_t n, double snr) {
             return UncoordinatedDesign{s, p, n, snr};
           }),
           py::arg("scheme"), py::arg("access_prob") = 1.0, py::arg("partitions") = 1,
           py::arg("target_snr") = 0.0)
      .def_readwrite("scheme", &UncoordinatedDesign::scheme)
      .def_readwrite("access_prob", &UncoordinatedDesign::access_prob)
      .def_readwrite("partitions", &UncoordinatedDesign::partitions)
      .def_readwrite("target_snr", &UncoordinatedDesign::target_snr);

  py::class_<UncoordinatedAnalysis>(m, "UncoordinatedAnalysis")
      .def_readonly("expected_active", &UncoordinatedAnalysis::expected_active)
      .def_readonly("expected_transmitting", &UncoordinatedAnalysis::expected_transmitting)
      .def_readonly("collision_prob", &UncoordinatedAnalysis::collision_prob)
      .def_readonly("expected_success", &UncoordinatedAnalysis::expected_success);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("scheme", &SweepRow::scheme)
      .def_readonly("lambda_", &SweepRow::lambda)
      .def_readonly("trials", &SweepRow::trials)
      .def_readonly("mean_throughput", &SweepRow::mean_throughput)
      .def_readonly("ci95_halfwidth", &SweepRow::ci95_halfwidth)
      .def_readonly("seed", &SweepRow::seed)
      .def_readonly("params_digest", &SweepRow::params_digest);

  m.def("channel_gain", &channel_gain, py::arg("normalized_distance"), py::arg("pathloss_exp"));
  m.def("received_snr", &received_snr, py::arg("normalized_power"), py::arg("bandwidth_ratio"),
        py::arg("ref_snr"), py::arg("gain"));

  m.def("fdma_min_bandwidth", &fdma_min_bandwidth, py::arg("gain"), py::arg("params"),
        "Minimum FDMA bandwidth in Hz, or None when no bandwidth suffices.");
  m.def("tdma_min_time", &tdma_min_time, py::arg("gain"), py::arg("params"));
  m.def(
      "noma_power_allocation",
      [](std::vector<double> gains, const SystemParams& p) {
        return noma_power_allocation(devices_from(std::move(gains)), p);
      },
      py::arg("gains"), py::arg("params"));
  m.def(
      "coordinated_kmax",
      [](Scheme s, std::vector<double> gains, const SystemParams& p, bool enforce_minimum) {
        return coordinated_kmax(s, devices_from(std::move(gains)), p, enforce_minimum);
      },
      py::arg("scheme"), py::arg("gains"), py::arg("params"), py::arg("enforce_minimum") = false);

  m.def("collision_probability", &collision_probability, py::arg("transmitters"),
        py::arg("partitions"));
  m.def("tx_probability", &tx_probability, py::arg("design"), py::arg("params"));
  m.def(
      "uncoordinated_throughput",
      [](const UncoordinatedDesign& d, const SystemParams& p, double lambda) {
        return uncoordinated_throughput(d, p, TrafficModel{lambda});
      },
      py::arg("design"), py::arg("params"), py::arg("arrival_rate"));
  m.def(
      "optimize_design",
      [](Scheme s, const SystemParams& p, double lambda) {
        return optimize_design(s, p, TrafficModel{lambda});
      },
      py::arg("scheme"), py::arg("params"), py::arg("arrival_rate"));
  m.def(
      "design_noma",
      [](const SystemParams& p, double lambda, TargetSnrForm form) {
        return design_noma(p, TrafficModel{lambda}, form);
      },
      py::arg("params"), py::arg("arrival_rate"), py::arg("form") = TargetSnrForm::AsPrinted);
  m.def("noma_device_cap", &noma_device_cap, py::arg("params"));
  m.def("noma_required_snr", &noma_required_snr, py::arg("transmitters"), py::arg("params"),
        py::arg("form") = TargetSnrForm::AsPrinted);
  m.def("noma_feasibility_probability", &noma_feasibility_probability, py::arg("target_snr"),
        py::arg("params"));

  m.def(
      "run_sweep",
      [](Coordination c, Scheme s, const SystemParams& p, std::vector<double> lambdas,
         std::uint64_t trials, std::uint64_t seed, bool enforce_minimum, TargetSnrForm form,
         unsigned threads) {
        SchemeConfig config{{c, s}, enforce_minimum, form, std::nullopt};
        py::gil_scoped_release release;
        return run_sweep(config, p, lambdas, SweepOptions{trials, seed, threads});
      },
      py::arg("coordination"), py::arg("scheme"), py::arg("params"), py::arg("lambdas"),
      py::arg("trials") = 1000, py::arg("seed") = 1, py::arg("enforce_minimum") = false,
      py::arg("form") = TargetSnrForm::AsPrinted, py::arg("threads") = 1);
  m.def(
      "analytic_sweep",
      [](Coordination c, Scheme s, const SystemParams& p, std::vector<double> lambdas,
         bool enforce_minimum, TargetSnrForm form) {
        SchemeConfig config{{c, s}, enforce_minimum, form, std::nullopt};
        return analytic_sweep(config, p, lambdas, 0);
      },
      py::arg("coordination"), py::arg("scheme"), py::arg("params"), py::arg("lambdas"),
      py::arg("enforce_minimum") = false, py::arg("form") = TargetSnrForm::AsPrinted);
}
