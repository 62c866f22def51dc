#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sfcw/config_file.hpp"
#include "sfcw/container.hpp"
#include "sfcw/conversion.hpp"
#include "sfcw/errors.hpp"
#include "sfcw/model_order.hpp"
#include "sfcw/pipeline.hpp"
#include "sfcw/simulator.hpp"
#include "sfcw/tracking.hpp"
#include "sfcw/vitals.hpp"

namespace py = pybind11;
using namespace sfcw;

namespace {

py::array_t<cd> cube_samples(const MeasurementCube& c) {
  py::array_t<cd> out({c.L, c.K, c.M});
  std::copy(c.samples.begin(), c.samples.end(), out.mutable_data());
  return out;
}

MeasurementCube cube_from_arrays(const RadarConfig& cfg, py::array_t<cd, py::array::c_style | py::array::forcecast> s,
                                 std::vector<double> slow_time) {
  if (s.ndim() != 3) throw ArgumentError("samples must have shape (L, K, M)");
  MeasurementCube c(cfg, static_cast<int>(s.shape(0)), static_cast<int>(s.shape(1)),
                    static_cast<int>(s.shape(2)));
  std::copy(s.data(), s.data() + s.size(), c.samples.begin());
  c.slow_time = std::move(slow_time);
  c.check();
  return c;
}

PipelineConfig pipeline_config(const std::optional<std::filesystem::path>& path) {
  return path ? pipeline_config_from(load_key_values(*path), {}) : PipelineConfig{};
}

py::dict pipeline_result(const PipelineResult& r) {
  py::list segments;
  for (const auto& s : r.segments) {
    py::list dets;
    for (std::size_t i = 0; i < s.detections.detections.size(); ++i) {
      const auto& d = s.detections.detections[i];
      dets.append(py::dict(py::arg("d") = d.location.d, py::arg("theta") = d.location.theta,
                           py::arg("value") = d.value, py::arg("label") = s.labels.at(i)));
    }
    segments.append(py::dict(py::arg("index") = s.index, py::arg("t_start") = s.t_start,
                             py::arg("P_hat") = s.order.P_hat, py::arg("beta") = s.order.beta,
                             py::arg("detections") = dets));
  }
  py::list tracks;
  for (const auto& t : r.tracks) {
    tracks.append(py::dict(py::arg("label") = t.label, py::arg("segments") = t.segments,
                           py::arg("d") = t.last_location().d, py::arg("theta") = t.last_location().theta,
                           py::arg("breath_freq") = t.breath_freq));
  }
  py::list final_locs;
  for (const auto& l : final_locations(r)) final_locs.append(py::make_tuple(l.d, l.theta));
  return py::dict(py::arg("segments") = segments, py::arg("tracks") = tracks,
                  py::arg("final_locations") = final_locs, py::arg("f_c") = r.f_c,
                  py::arg("spectrum") = py::array_t<double>({r.spectrum.grid.n_d(), r.spectrum.grid.n_theta()},
                                                            r.spectrum.values.data()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stepped-frequency radar localization and breathing-rate estimation";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_IOError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<RadarConfig>(m, "RadarConfig")
      .def(py::init<>())
      .def_readwrite("f0", &RadarConfig::f0)
      .def_readwrite("K", &RadarConfig::K)
      .def_readwrite("B", &RadarConfig::B)
      .def_readwrite("N", &RadarConfig::N)
      .def_readwrite("delta", &RadarConfig::delta)
      .def_readwrite("delta_t", &RadarConfig::delta_t)
      .def_readwrite("M_r", &RadarConfig::M_r)
      .def_readwrite("M_t", &RadarConfig::M_t)
      .def_readwrite("f_st", &RadarConfig::f_st)
      .def_readwrite("c", &RadarConfig::c)
      .def("channels", &RadarConfig::channels);

  py::class_<DerivedParams>(m, "DerivedParams")
      .def_readonly("delta_f", &DerivedParams::delta_f)
      .def_readonly("f_c", &DerivedParams::f_c)
      .def_readonly("M", &DerivedParams::M)
      .def_readonly("d_max", &DerivedParams::d_max)
      .def_readonly("Delta_d", &DerivedParams::Delta_d)
      .def_readonly("delta_d", &DerivedParams::delta_d)
      .def_readonly("K0", &DerivedParams::K0);

  m.def("walabot_config", &walabot_config);
  m.def("derive_params", &derive_params, py::arg("config"));

  py::class_<MeasurementCube>(m, "MeasurementCube")
      .def(py::init(&cube_from_arrays), py::arg("config"), py::arg("samples"), py::arg("slow_time"))
      .def_readonly("config", &MeasurementCube::config)
      .def_readonly("L", &MeasurementCube::L)
      .def_readonly("K", &MeasurementCube::K)
      .def_readonly("M", &MeasurementCube::M)
      .def_readonly("slow_time", &MeasurementCube::slow_time)
      .def_property_readonly("samples", &cube_samples)
      .def_property_readonly("truth", [](const MeasurementCube& c) {
        py::list out;
        if (c.ground_truth)
          for (const auto& p : c.ground_truth->persons)
            out.append(py::make_tuple(p.location.d, p.location.theta, p.breath_freq));
        return out;
      });

  m.def("simulate_scenario",
        [](const std::filesystem::path& path, std::optional<std::uint64_t> seed) {
          auto sc = scenario_from(load_key_values(path));
          if (seed) sc.scene.clutter.seed = *seed;
          py::gil_scoped_release release;
          return simulate(sc.scene, sc.radar);
        },
        py::arg("path"), py::arg("seed") = py::none());
  m.def("read_container", py::overload_cast<const std::filesystem::path&>(&read_container), py::arg("path"));
  m.def("write_container",
        py::overload_cast<const MeasurementCube&, const std::filesystem::path&>(&write_container),
        py::arg("cube"), py::arg("path"));
  m.def("convert_recording", [](const std::filesystem::path& dir) { return convert_recording(read_raw_recording(dir)); },
        py::arg("directory"));

  m.def("range_profile",
        [](std::vector<cd> snapshot, int N) { return range_profile(snapshot, N); },
        py::arg("snapshot"), py::arg("N"));

  m.def("estimate_order",
        [](const std::vector<double>& values, double alpha, int n_candidates, int D) {
          const Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
          ModelOrderConfig cfg;
          cfg.alpha = alpha;
          cfg.n_candidates = n_candidates;
          cfg.D = D;
          return estimate_order(lambda, cfg);
        },
        py::arg("eigenvalues"), py::arg("alpha") = 3.0, py::arg("n_candidates") = 5, py::arg("D") = 0);

  m.def("breathing_frequency",
        [](std::vector<double> eta, std::vector<double> time, double lo, double hi, int zero_pad) {
          if (eta.size() != time.size() || eta.size() < 2) throw ArgumentError("eta and time must match, length >= 2");
          VitalSeries s;
          s.eta = std::move(eta);
          s.time = std::move(time);
          s.f_st_actual = (s.time.size() - 1) / (s.time.back() - s.time.front());
          const std::vector<VitalSeries> one{s};
          return breathing_frequency(one, {lo, hi}, zero_pad);
        },
        py::arg("eta"), py::arg("time"), py::arg("lo") = 0.1, py::arg("hi") = 0.8, py::arg("zero_pad") = 8);

  m.def("run_pipeline",
        [](const MeasurementCube& cube, std::optional<std::filesystem::path> config) {
          const auto pc = pipeline_config(config);
          PipelineResult r;
          {
            py::gil_scoped_release release;
            r = run_pipeline(cube, pc);
          }
          return pipeline_result(r);
        },
        py::arg("cube"), py::arg("config") = py::none());

  m.def("match_and_score",
        [](const std::vector<std::pair<double, double>>& est, const std::vector<std::pair<double, double>>& ref,
           double d_match) {
          std::vector<PolarLocation> e, r;
          for (const auto& [d, t] : est) e.push_back({d, t});
          for (const auto& [d, t] : ref) r.push_back({d, t});
          const auto rep = match_and_score(e, r, d_match);
          return py::dict(py::arg("P") = rep.P, py::arg("P_hat") = rep.P_hat, py::arg("P_MD") = rep.P_MD,
                          py::arg("P_FD") = rep.P_FD, py::arg("TPP") = rep.tpp, py::arg("FDP") = rep.fdp,
                          py::arg("mean_error") = rep.mean_error, py::arg("median_error") = rep.median_error);
        },
        py::arg("estimates"), py::arg("references"), py::arg("d_match") = 0.3);
}
