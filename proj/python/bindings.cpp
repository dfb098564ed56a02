#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "bloomstream/bench.hpp"
#include "bloomstream/engine.hpp"
#include "bloomstream/errors.hpp"
#include "bloomstream/params.hpp"

namespace py = pybind11;
using namespace bloomstream;

namespace {

std::optional<std::uint64_t> label_value(const std::optional<Label>& label) {
  if (!label) return std::nullopt;
  return value(*label);
}

py::dict stats_dict(const ModelStats& s) {
  py::dict d;
  d["instances_seen"] = s.instances_seen;
  d["rejected"] = s.rejected;
  d["dense_events"] = s.dense_events;
  d["clusters_created"] = s.clusters_created;
  d["clusters_expanded"] = s.clusters_expanded;
  d["clusters_merged"] = s.clusters_merged;
  d["clusters_expired"] = s.clusters_expired;
  d["links_formed"] = s.links_formed;
  d["live_dynamic"] = s.live.dynamic;
  d["live_stable"] = s.live.stable;
  d["live_expired"] = s.live.expired;
  d["countmin_fill_ratio"] = s.countmin_fill_ratio;
  return d;
}

py::dict window_dict(const WindowMetrics& w) {
  py::dict d;
  d["window"] = w.window;
  d["instances"] = w.instances;
  d["purity"] = w.has_truth ? py::cast(w.purity.purity) : py::none();
  d["clusters"] = w.purity.clusters;
  d["clustered"] = w.purity.clustered;
  d["clusters_dynamic"] = w.clusters_dynamic;
  d["clusters_stable"] = w.clusters_stable;
  d["dense_events"] = w.dense_events;
  d["outlier_fraction"] = w.outlier_fraction;
  return d;
}

std::vector<LabeledPoint> to_points(const std::vector<std::vector<double>>& xs,
                                    const std::optional<std::vector<std::string>>& truth) {
  if (truth && truth->size() != xs.size()) {
    throw ConfigError("truth labels must match the number of points");
  }
  std::vector<LabeledPoint> points;
  points.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    points.push_back({xs[i], truth ? (*truth)[i] : std::string()});
  }
  return points;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "BloomStream stream clustering core";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<MonotonicityError>(m, "MonotonicityError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("next_prime", &next_prime, py::arg("lower"));

  py::class_<Geometry>(m, "Geometry")
      .def_readonly("k", &Geometry::k)
      .def_readonly("p", &Geometry::p)
      .def_property_readonly("m", &Geometry::m)
      .def("__repr__", [](const Geometry& g) {
        return "Geometry(k=" + std::to_string(g.k) + ", p=" + std::to_string(g.p) +
               ", m=" + std::to_string(g.m()) + ")";
      });

  m.def("derive_geometry", &derive_geometry, py::arg("n"), py::arg("fp"));
  m.def("predicted_fp", &predicted_fp, py::arg("m"), py::arg("k"), py::arg("n"));
  m.def("fragment_capacity", &fragment_capacity, py::arg("lam"), py::arg("density_threshold"),
        py::arg("dims"));
  m.def("base_hash_count", &base_hash_count, py::arg("epsilon"), py::arg("delta"));
  m.def(
      "derive_cm_guarantees",
      [](std::uint64_t n, double fp) {
        const auto g = derive_cm_guarantees(n, fp);
        py::dict d;
        d["epsilon"] = g.epsilon;
        d["delta_from_fp"] = g.delta_from_fp;
        d["delta"] = g.delta;
        return d;
      },
      py::arg("n"), py::arg("fp"));

  py::class_<SketchParams>(m, "SketchParams")
      .def(py::init(&SketchParams::make), py::arg("n") = 6935, py::arg("fp") = 0.0078,
           py::arg("lam") = 0.001, py::arg("density_threshold") = 3.0, py::arg("dims") = 5,
           py::arg("resolution") = 1.5, py::arg("origin") = std::vector<double>{})
      .def_readonly("n", &SketchParams::n)
      .def_readonly("fp", &SketchParams::fp)
      .def_readonly("geometry", &SketchParams::geometry)
      .def_readonly("lam", &SketchParams::lambda)
      .def_readonly("density_threshold", &SketchParams::density_threshold)
      .def_readonly("dims", &SketchParams::dims)
      .def_readonly("resolution", &SketchParams::resolution)
      .def_readonly("origin", &SketchParams::origin)
      .def_property_readonly("time_threshold", &SketchParams::time_threshold);

  py::class_<BloomStream>(m, "BloomStream")
      .def(py::init<SketchParams, std::uint64_t, std::uint64_t>(), py::arg("params"),
           py::arg("seed1") = HashFamily::kDefaultSeed1,
           py::arg("seed2") = HashFamily::kDefaultSeed2)
      .def(
          "ingest",
          [](BloomStream& self, const std::vector<double>& x, std::optional<double> t) {
            const IngestOutcome o = t ? self.ingest(x, *t) : self.ingest(x);
            py::dict d;
            d["density"] = o.density;
            d["dense"] = o.dense;
            d["rejected"] = o.rejected;
            d["event"] = std::string(to_string(o.event));
            d["cluster"] = o.cluster ? py::cast(value(*o.cluster)) : py::none();
            d["label"] = label_value(o.label);
            return d;
          },
          py::arg("x"), py::arg("t") = py::none())
      .def(
          "classify",
          [](const BloomStream& self, const std::vector<double>& x, std::optional<double> t) {
            return label_value(self.classify(x, t.value_or(self.clock())));
          },
          py::arg("x"), py::arg("t") = py::none(),
          "Cluster label, or None for an outlier. t defaults to the model clock.")
      .def("sweep_expired", &BloomStream::sweep_expired, py::arg("t"))
      .def("stats", [](const BloomStream& self) { return stats_dict(self.snapshot_stats()); })
      .def_property_readonly("clock", &BloomStream::clock)
      .def_property_readonly("params", &BloomStream::params)
      .def_property_readonly("cluster_count",
                             [](const BloomStream& self) { return self.registry().size(); });

  m.def(
      "generate_stream",
      [](std::size_t dims, std::size_t clusters, double noise_fraction, double separation,
         double cluster_sd, double center_box, std::size_t total_instances, std::uint64_t seed) {
        SyntheticStreamConfig cfg;
        cfg.dims = dims;
        cfg.clusters = clusters;
        cfg.noise_fraction = noise_fraction;
        cfg.min_center_separation = separation;
        cfg.cluster_sd = cluster_sd;
        cfg.center_box = center_box;
        cfg.total_instances = total_instances;
        cfg.seed = seed;
        const auto stream = generate_stream(cfg);
        std::vector<std::vector<double>> xs;
        std::vector<std::string> truth;
        xs.reserve(stream.points.size());
        truth.reserve(stream.points.size());
        for (const auto& p : stream.points) {
          xs.push_back(p.x);
          truth.push_back(p.truth);
        }
        return py::make_tuple(xs, truth, stream.centers);
      },
      py::arg("dims") = 5, py::arg("clusters") = 5, py::arg("noise_fraction") = 0.1,
      py::arg("separation") = 4.0, py::arg("cluster_sd") = 1.0, py::arg("center_box") = 20.0,
      py::arg("total_instances") = 2000, py::arg("seed") = 1,
      "Returns (points, truth_labels, centers).");

  m.def(
      "purity",
      [](const std::vector<std::optional<std::uint64_t>>& predicted,
         const std::vector<std::string>& truth) -> std::optional<double> {
        if (predicted.size() != truth.size()) {
          throw ConfigError("predicted and truth must have the same length");
        }
        std::vector<Assignment> rows;
        rows.reserve(predicted.size());
        for (std::size_t i = 0; i < predicted.size(); ++i) {
          std::optional<Label> label;
          if (predicted[i]) label = Label{*predicted[i]};
          rows.push_back({label, truth[i]});
        }
        return purity(rows).purity;
      },
      py::arg("predicted"), py::arg("truth"),
      "Purity over non-outlier predictions (None entries); None if all are outliers.");

  m.def(
      "evaluate_over_horizons",
      [](BloomStream& model, const std::vector<std::vector<double>>& xs,
         const std::optional<std::vector<std::string>>& truth, std::size_t horizon) {
        const auto points = to_points(xs, truth);
        py::list out;
        for (const auto& w : evaluate_over_horizons(model, points, horizon)) {
          py::dict d = window_dict(w);
          if (!truth) d["purity"] = py::none();
          out.append(d);
        }
        return out;
      },
      py::arg("model"), py::arg("points"), py::arg("truth") = py::none(),
      py::arg("horizon") = 2000);
}
