// Copyright 2026 The qobs developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qobs/documents.hpp"
#include "qobs/errors.hpp"
#include "qobs/states.hpp"

namespace py = pybind11;
using namespace qobs;

namespace pybind11::detail {

// Exact rationals cross the boundary as fractions.Fraction.
template <>
struct type_caster<mpq_class> {
  PYBIND11_TYPE_CASTER(mpq_class, _("Fraction"));

  bool load(handle src, bool) {
    if (isinstance<py::str>(src)) {
      try {
        value = qobs::parse_rational(std::string(py::str(src)));
        return true;
      } catch (const qobs::Error&) {
        return false;
      }
    }
    if (isinstance<py::int_>(src)) {
      value = mpq_class(mpz_class(std::string(py::str(src)), 10));
      return true;
    }
    if (py::isinstance<py::float_>(src)) return false;  // exact inputs only
    if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator")) {
      mpz_class num(std::string(py::str(src.attr("numerator"))), 10);
      mpz_class den(std::string(py::str(src.attr("denominator"))), 10);
      if (den == 0) return false;
      value = mpq_class(num, den);
      value.canonicalize();
      return true;
    }
    return false;
  }

  static handle cast(const mpq_class& src, return_value_policy, handle) {
    py::object fraction =
        py::module_::import("fractions").attr("Fraction");
    py::object int_ = py::module_::import("builtins").attr("int");
    return fraction(int_(py::str(src.get_num().get_str())),
                    int_(py::str(src.get_den().get_str())))
        .release();
  }
};

}  // namespace pybind11::detail

namespace {

struct PyStructure {
  StructurePtr ptr;
};

struct PyMv {
  MvStructure mv;
};

struct PyFuzzy {
  FuzzyStructure fz;
};

IntervalSet to_set(const py::object& obj) {
  if (py::isinstance<py::str>(obj))
    return parse_interval_set(std::string(py::str(obj)));
  return obj.cast<IntervalSet>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite quantum structures, observables and spectral families";

  py::register_exception<Error>(m, "QobsError");

  // ---------------------------------------------------------------- sets
  py::class_<IntervalSet>(m, "IntervalSet")
      .def_static("parse",
                  [](const std::string& text) { return parse_interval_set(text); })
      .def_static("empty", &IntervalSet::empty)
      .def_static("reals", &IntervalSet::reals)
      .def_static("singleton", &IntervalSet::singleton)
      .def("complement", &IntervalSet::complement)
      .def("union", [](const IntervalSet& a, const py::object& b) {
        return set_union(a, to_set(b));
      })
      .def("intersect", [](const IntervalSet& a, const py::object& b) {
        return set_intersect(a, to_set(b));
      })
      .def("difference", [](const IntervalSet& a, const py::object& b) {
        return set_difference(a, to_set(b));
      })
      .def("contains", &IntervalSet::contains)
      .def("is_empty", &IntervalSet::is_empty)
      .def("is_reals", &IntervalSet::is_reals)
      .def("is_closed", &IntervalSet::is_closed)
      .def("__eq__", [](const IntervalSet& a, const IntervalSet& b) { return a == b; })
      .def("__str__", &IntervalSet::str)
      .def("__repr__", [](const IntervalSet& s) { return "IntervalSet(" + s.str() + ")"; });

  m.def("generated_algebra", [](const std::vector<Rational>& points) {
    return generated_algebra(points);
  });

  // ----------------------------------------------------------- structures
  py::class_<Flavor>(m, "Flavor")
      .def_readonly("mv", &Flavor::mv)
      .def_readonly("lattice", &Flavor::lattice)
      .def_readonly("boolean", &Flavor::boolean_algebra)
      .def_readonly("orthomodular_poset", &Flavor::orthomodular_poset)
      .def_readonly("rdp", &Flavor::rdp)
      .def("names", &Flavor::names)
      .def("__repr__", [](const Flavor& f) {
        std::string out = "Flavor(";
        for (const auto& n : f.names()) out += n + ",";
        if (out.back() == ',') out.pop_back();
        return out + ")";
      });

  py::class_<PyStructure>(m, "Structure")
      .def_property_readonly("size",
                             [](const PyStructure& s) { return s.ptr->size(); })
      .def("name", [](const PyStructure& s, ElementId a) { return s.ptr->name(a); })
      .def("id_of", [](const PyStructure& s, const std::string& n) {
        return s.ptr->id_of(n);
      })
      .def_property_readonly("zero",
                             [](const PyStructure& s) { return s.ptr->zero(); })
      .def_property_readonly("one",
                             [](const PyStructure& s) { return s.ptr->one(); })
      .def("plus", [](const PyStructure& s, ElementId a, ElementId b) {
        return s.ptr->try_plus(a, b);
      })
      .def("minus", [](const PyStructure& s, ElementId b, ElementId a) {
        return s.ptr->try_minus(b, a);
      })
      .def("leq", [](const PyStructure& s, ElementId a, ElementId b) {
        return s.ptr->leq(a, b);
      })
      .def("complement", [](const PyStructure& s, ElementId a) {
        return s.ptr->complement(a);
      })
      .def("meet", [](const PyStructure& s, ElementId a, ElementId b) {
        return s.ptr->meet(a, b);
      })
      .def("join", [](const PyStructure& s, ElementId a, ElementId b) {
        return s.ptr->join(a, b);
      })
      .def_property_readonly("flavor",
                             [](const PyStructure& s) { return s.ptr->flavor(); })
      .def("__len__", [](const PyStructure& s) { return s.ptr->size(); })
      .def("__repr__", [](const PyStructure& s) {
        return "Structure(" + std::to_string(s.ptr->size()) + " elements)";
      });

  py::class_<PyMv>(m, "MvStructure")
      .def_property_readonly("base",
                             [](const PyMv& m_) { return PyStructure{m_.mv.base}; })
      .def("oplus", [](const PyMv& m_, ElementId a, ElementId b) {
        return m_.mv.op(a, b);
      })
      .def("star", [](const PyMv& m_, ElementId a) { return m_.mv.st(a); });

  py::class_<PyFuzzy>(m, "FuzzyStructure")
      .def_property_readonly(
          "structure", [](const PyFuzzy& f) { return PyStructure{f.fz.structure}; })
      .def_property_readonly("omega",
                             [](const PyFuzzy& f) { return f.fz.carrier.omega; })
      .def("function", [](const PyFuzzy& f, ElementId a) {
        return f.fz.carrier.functions[a];
      });

  m.def("make_chain", [](int n) { return PyMv{make_chain(n)}; });
  m.def("make_power_set", [](const std::vector<std::string>& labels) {
    return PyMv{make_power_set(labels)};
  });
  m.def("product", [](const PyStructure& a, const PyStructure& b) {
    return PyStructure{product(*a.ptr, *b.ptr)};
  });
  m.def("make_fuzzy",
        [](std::vector<std::string> omega,
           std::vector<std::vector<Rational>> functions) {
          return PyFuzzy{make_fuzzy(std::move(omega), std::move(functions))};
        });
  m.def("validate_structure",
        [](std::vector<std::string> names,
           std::vector<std::array<ElementId, 3>> entries,
           const std::string& zero, const std::string& one) {
          RawStructureTable raw;
          raw.names = std::move(names);
          raw.entries = std::move(entries);
          raw.zero_name = zero;
          raw.one_name = one;
          return PyStructure{validate_structure(raw)};
        },
        py::arg("names"), py::arg("entries"),
        py::arg("zero") = std::string("0"), py::arg("one") = std::string("1"));

  m.def("is_compatible", [](const PyStructure& s, ElementId a, ElementId b)
            -> std::optional<std::tuple<ElementId, ElementId, ElementId>> {
    auto w = is_compatible(*s.ptr, a, b);
    if (!w) return std::nullopt;
    return std::tuple{w->a1, w->b1, w->c};
  });
  m.def("blocks", [](const PyStructure& s) { return blocks(*s.ptr); });
  m.def("sharp_elements", [](const PyStructure& s) {
    auto report = sharp_elements(*s.ptr);
    return std::pair{report.elements, report.meet_undefined};
  });
  m.def("rdp_refine", [](const PyStructure& s, ElementId a1, ElementId a2,
                         ElementId b1, ElementId b2) {
    auto m_ = rdp_refine(*s.ptr, a1, a2, b1, b2);
    return std::tuple{m_.c11, m_.c12, m_.c21, m_.c22};
  });
  m.def("summable_sum", [](const PyStructure& s, std::vector<ElementId> items) {
    return summable_sum(*s.ptr, items);
  });
  m.def("is_subalgebra", [](const PyStructure& s, std::vector<ElementId> subset) {
    return is_subalgebra(*s.ptr, subset);
  });

  // -------------------------------------------------------- homomorphisms
  py::class_<Homomorphism>(m, "Homomorphism")
      .def_readonly("surjective", &Homomorphism::surjective)
      .def_readonly("mv", &Homomorphism::mv)
      .def_readonly("map", &Homomorphism::map)
      .def("__call__", &Homomorphism::operator())
      .def_property_readonly("source", [](const Homomorphism& h) {
        return PyStructure{h.source};
      })
      .def_property_readonly("target", [](const Homomorphism& h) {
        return PyStructure{h.target};
      });

  m.def("make_homomorphism",
        [](const PyStructure& src, const PyStructure& dst,
           std::vector<ElementId> map) {
          return make_homomorphism(src.ptr, dst.ptr, std::move(map));
        });
  m.def("make_mv_homomorphism",
        [](const PyMv& src, const PyMv& dst, std::vector<ElementId> map) {
          return make_mv_homomorphism(src.mv, dst.mv, std::move(map));
        });
  m.def("product_projection",
        [](const PyStructure& prod, const PyStructure& s1, const PyStructure& s2,
           int which) {
          return product_projection(prod.ptr, s1.ptr, s2.ptr, which);
        });
  m.def("fuzzy_restriction", [](const PyFuzzy& src, std::vector<int> keep) {
    FuzzyStructure target;
    auto h = fuzzy_restriction(src.fz, keep, &target);
    return std::pair{h, PyFuzzy{std::move(target)}};
  });
  m.def("jauch_piron_witness", [](const Homomorphism& h, ElementId a, ElementId b) {
    return jauch_piron_witness(h, a, b);
  });
  m.def("mv_lift", [](const Homomorphism& h, ElementId a, ElementId b, ElementId c) {
    return mv_lift(h, a, b, c);
  });

  // ---------------------------------------------------------- observables
  py::class_<Observable>(m, "Observable")
      .def_static("make",
                  [](const PyStructure& s,
                     const std::vector<std::pair<Rational, py::object>>& atoms) {
                    std::vector<ObservableAtom> converted;
                    for (const auto& [t, e] : atoms) {
                      ElementId id = py::isinstance<py::str>(e)
                                         ? s.ptr->id_of(std::string(py::str(e)))
                                         : e.cast<ElementId>();
                      converted.push_back({t, id});
                    }
                    return Observable::make(s.ptr, std::move(converted));
                  })
      .def_property_readonly("structure",
                             [](const Observable& x) {
                               return PyStructure{x.structure()};
                             })
      .def_property_readonly("atoms",
                             [](const Observable& x) {
                               std::vector<std::pair<Rational, ElementId>> out;
                               for (const auto& a : x.atoms())
                                 out.push_back({a.point, a.effect});
                               return out;
                             })
      .def("evaluate",
           [](const Observable& x, const py::object& set) {
             return x.evaluate(to_set(set));
           })
      .def("spectrum_points", &Observable::spectrum_points)
      .def("__eq__",
           [](const Observable& a, const Observable& b) { return a == b; });

  m.def("make_question", [](const PyStructure& s, ElementId a) {
    return make_question(s.ptr, a);
  });

  py::class_<SpectralFamily>(m, "SpectralFamily")
      .def_static("make",
                  [](const PyStructure& s,
                     const std::vector<std::pair<Rational, ElementId>>& jumps) {
                    std::vector<SpectralJump> converted;
                    for (const auto& [t, c] : jumps) converted.push_back({t, c});
                    return SpectralFamily::make(s.ptr, std::move(converted));
                  })
      .def_property_readonly("jumps",
                             [](const SpectralFamily& f) {
                               std::vector<std::pair<Rational, ElementId>> out;
                               for (const auto& j : f.jumps())
                                 out.push_back({j.point, j.cumulative});
                               return out;
                             })
      .def("at", &SpectralFamily::at)
      .def("__eq__", [](const SpectralFamily& a, const SpectralFamily& b) {
        return a == b;
      });

  m.def("spectral_family", &spectral_family);
  m.def("reconstruct", &reconstruct);
  m.def("check_family_axioms",
        [](const PyStructure& s,
           const std::vector<std::pair<Rational, ElementId>>& jumps) {
          std::vector<SpectralJump> converted;
          for (const auto& [t, c] : jumps) converted.push_back({t, c});
          auto report = check_family_axioms(s.ptr, converted);
          py::dict out;
          out["representation_ok"] = report.representation_ok;
          out["monotone_ok"] = report.monotone_ok;
          out["top_is_one"] = report.top_is_one;
          out["bottom_is_zero"] = report.bottom_is_zero;
          out["left_continuous"] = report.left_continuous;
          out["detail"] = report.detail;
          return out;
        });
  m.def("uniqueness_oracle", [](const Observable& x, const Observable& y) {
    auto verdict = uniqueness_oracle(x, y);
    return std::pair{verdict.agree, verdict.witness};
  });
  m.def("range", [](const Observable& x) { return range(x); });
  m.def("boolean_point_function", [](const SpectralFamily& f) {
    auto pf = boolean_point_function(f);
    std::vector<std::pair<std::string, Rational>> out;
    for (size_t i = 0; i < pf.carrier.size(); ++i)
      out.push_back({pf.labels[i], pf.values[i]});
    return out;
  });
  m.def("is_boolean_sigma_hom", &is_boolean_sigma_hom);
  m.def("is_sharp", &is_sharp);
  m.def("preserves_finite_intersections", &preserves_finite_intersections);
  m.def("jauch_piron_check", &jauch_piron_check);
  m.def("spectrum", &spectrum);
  m.def("functional_calculus",
        [](const Observable& x,
           const std::vector<std::pair<Rational, Rational>>& table) {
          return functional_calculus(x, table);
        });

  // --------------------------------------------------------------- states
  py::class_<State>(m, "State")
      .def_static("make",
                  [](const PyStructure& s, std::vector<Rational> values) {
                    return State::make(s.ptr, std::move(values));
                  })
      .def("value", &State::value)
      .def_property_readonly("values", &State::values)
      .def("__eq__", [](const State& a, const State& b) { return a == b; });

  m.def("convex_mix", &convex_mix);

  py::class_<StatePolytope>(m, "StatePolytope")
      .def_property_readonly("empty", &StatePolytope::empty)
      .def_property_readonly("dimension", &StatePolytope::dimension)
      .def_property_readonly("free_coordinates", &StatePolytope::free_coordinates)
      .def_property_readonly("vertices", &StatePolytope::vertices);

  m.def("state_polytope",
        [](const PyStructure& s) { return state_polytope(s.ptr); });
  m.def("hat", [](const StatePolytope& p, ElementId a) {
    auto functional = hat(p, a);
    return py::cpp_function(
        [functional](const State& s) { return functional(s); });
  });
  m.def("distribution", &distribution);
  m.def("expectation",
        [](const State& s, const Observable& x,
           const std::optional<std::vector<std::pair<Rational, Rational>>>& f) {
          return f ? expectation(s, x, *f) : expectation(s, x);
        },
        py::arg("state"), py::arg("observable"), py::arg("f") = py::none());
  m.def("moment", &moment);
  m.def("sample", &sample, py::arg("state"), py::arg("observable"),
        py::arg("count"), py::arg("seed"));

  // -------------------------------------------------------------- hilbert
  py::class_<EffectOperator>(m, "EffectOperator")
      .def_static("make", [](const Matrix& m_) { return EffectOperator::make(m_); })
      .def_property_readonly("dim", &EffectOperator::dim)
      .def_property_readonly("matrix", &EffectOperator::matrix)
      .def_property_readonly("hermiticity_residual",
                             &EffectOperator::hermiticity_residual)
      .def_property_readonly("min_eigenvalue", &EffectOperator::min_eigenvalue)
      .def_property_readonly("max_eigenvalue", &EffectOperator::max_eigenvalue);

  m.def("loewner_leq", &loewner_leq);

  py::class_<OperatorSpectralFamily>(m, "OperatorSpectralFamily")
      .def_static("make",
                  [](const std::vector<std::pair<double, Matrix>>& jumps) {
                    std::vector<OperatorJump> converted;
                    for (const auto& [t, m_] : jumps)
                      converted.push_back({t, EffectOperator::make(m_)});
                    return OperatorSpectralFamily::make(std::move(converted));
                  })
      .def_property_readonly("dim", &OperatorSpectralFamily::dim)
      .def_property_readonly("jumps", [](const OperatorSpectralFamily& f) {
        std::vector<std::pair<double, Matrix>> out;
        for (const auto& j : f.jumps())
          out.push_back({j.point, j.cumulative.matrix()});
        return out;
      });

  py::class_<Povm>(m, "Povm")
      .def_static("make",
                  [](const std::vector<std::pair<double, Matrix>>& atoms) {
                    std::vector<PovmAtom> converted;
                    for (const auto& [t, m_] : atoms)
                      converted.push_back({t, EffectOperator::make(m_)});
                    return Povm::make(std::move(converted));
                  })
      .def_property_readonly("dim", &Povm::dim)
      .def_property_readonly("sum_residual", &Povm::sum_residual)
      .def_property_readonly("atoms", [](const Povm& p) {
        std::vector<std::pair<double, Matrix>> out;
        for (const auto& a : p.atoms()) out.push_back({a.point, a.effect.matrix()});
        return out;
      });

  m.def("reconstruct_povm", &reconstruct_povm);
  m.def("effect_probability", &effect_probability);
  m.def("distribution_function", &distribution_function);

  py::class_<DensityState>(m, "DensityState")
      .def_static("make", [](const Matrix& rho) { return DensityState::make(rho); })
      .def_property_readonly("dim", &DensityState::dim)
      .def_property_readonly("matrix", &DensityState::matrix);

  py::class_<PovmStatistics>(m, "PovmStatistics")
      .def_readonly("probabilities", &PovmStatistics::probabilities)
      .def_readonly("expectation", &PovmStatistics::expectation)
      .def_readonly("moments", &PovmStatistics::moments)
      .def_readonly("probability_residual", &PovmStatistics::probability_residual);

  m.def("povm_statistics", &povm_statistics, py::arg("povm"), py::arg("rho"),
        py::arg("max_moment") = 2);

  // ------------------------------------------------------------ documents
  m.def("load_structure_document", [](const std::filesystem::path& path) {
    auto loaded = load_structure_document(path);
    py::dict out;
    out["kind"] = kind_name(loaded.kind);
    if (loaded.structure) out["structure"] = PyStructure{loaded.structure};
    if (loaded.mv) out["mv"] = PyMv{*loaded.mv};
    if (loaded.fuzzy) out["fuzzy"] = PyFuzzy{*loaded.fuzzy};
    if (loaded.hilbert) {
      py::list effects;
      for (const auto& [t, matrix] : loaded.hilbert->effects)
        effects.append(py::make_tuple(t, matrix));
      out["dim"] = loaded.hilbert->dim;
      out["effects"] = effects;
      if (loaded.hilbert->rho) out["rho"] = *loaded.hilbert->rho;
    }
    return out;
  });
  m.def("load_observable_document", &load_observable_document);
  m.def("load_state_document", &load_state_document);
  m.def("load_family_document", [](const std::filesystem::path& path) {
    auto loaded = load_family_document(path);
    std::vector<std::pair<Rational, ElementId>> jumps;
    for (const auto& j : loaded.jumps) jumps.push_back({j.point, j.cumulative});
    return std::pair{PyStructure{loaded.structure}, jumps};
  });
}
