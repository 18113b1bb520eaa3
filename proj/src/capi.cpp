#include "ballistic/ballistic.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "ballistic/errors.hpp"
#include "ballistic/qsim.hpp"
#include "ballistic/selftest.hpp"
#include "commands.hpp"

using namespace ballistic;

struct bl_state {
  PermState st;
};

struct bl_circuit {
  int n;
  std::vector<Gate> gates;
};

namespace {

thread_local std::string last_error;

bl_status code_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Input: return BL_ERR_INPUT;
    case ErrorKind::Limit: return BL_ERR_LIMIT;
    case ErrorKind::ZeroProbability: return BL_ERR_ZERO_PROBABILITY;
    case ErrorKind::SimultaneousCollision: return BL_ERR_SIMULTANEOUS_COLLISION;
    case ErrorKind::Check: return BL_ERR_CHECK;
  }
  return BL_ERR_INTERNAL;
}

template <class F>
bl_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    last_error = e.what();
    return code_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BL_ERR_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BL_ERR_INTERNAL;
  }
}

Permutation perm_from(const int* image, int n) {
  require(image != nullptr && n >= 1, "null or empty permutation");
  return Permutation(std::vector<int>(image, image + n));
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* bl_version(void) { return "1.0.0"; }

const char* bl_last_error(void) { return last_error.c_str(); }

bl_status bl_state_new(const int* image, int n, bl_state** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = new bl_state{PermState::basis(perm_from(image, n))};
    return BL_OK;
  });
}

void bl_state_free(bl_state* state) { delete state; }

size_t bl_state_dimension(const bl_state* state) { return state ? state->st.dimension() : 0; }

bl_status bl_state_amplitude(const bl_state* state, const int* image, double* re, double* im) {
  return guarded([&] {
    require(state && re && im, "null argument");
    const auto s = perm_from(image, state->st.n());
    const cx a = state->st.amplitude(s);
    *re = a.real();
    *im = a.imag();
    return BL_OK;
  });
}

bl_status bl_state_probabilities(const bl_state* state, double* out, size_t len) {
  return guarded([&] {
    require(state && out, "null argument");
    require(len >= state->st.dimension(), "output buffer shorter than n!");
    for (std::size_t r = 0; r < state->st.dimension(); ++r) out[r] = std::norm(state->st[r]);
    return BL_OK;
  });
}

bl_status bl_circuit_new(int n, bl_circuit** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    require(n >= 1, "circuit needs n >= 1");
    *out = new bl_circuit{n, {}};
    return BL_OK;
  });
}

bl_status bl_circuit_from_json(const char* text, bl_circuit** out) {
  return guarded([&] {
    require(text && out, "null argument");
    const auto c = io::parse_circuit(io::parse_text(text, "circuit"));
    *out = new bl_circuit{c.n, c.gates};
    return BL_OK;
  });
}

void bl_circuit_free(bl_circuit* circuit) { delete circuit; }

bl_status bl_circuit_add(bl_circuit* circuit, char type, int k, double param) {
  return guarded([&] {
    require(circuit != nullptr, "null circuit");
    Gate g;
    switch (type) {
      case 'X': g = Gate::x(param, k); break;
      case 'Y': g = Gate::y(param, k); break;
      case 'H': g = Gate::h(param, k); break;
      default: fail(ErrorKind::Input, "gate type must be X, Y or H");
    }
    validate_gate(g, circuit->n);
    circuit->gates.push_back(g);
    return BL_OK;
  });
}

size_t bl_circuit_size(const bl_circuit* circuit) { return circuit ? circuit->gates.size() : 0; }

bl_status bl_apply(bl_state* state, const bl_circuit* circuit) {
  return guarded([&] {
    require(state && circuit, "null argument");
    require(state->st.n() == circuit->n, "state and circuit sizes differ");
    apply_circuit(state->st, circuit->gates);
    return BL_OK;
  });
}

bl_status bl_rank(const int* image, int n, uint64_t* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = rank(perm_from(image, n));
    return BL_OK;
  });
}

bl_status bl_unrank(int n, uint64_t r, int* image) {
  return guarded([&] {
    require(image != nullptr, "null output");
    require(n >= 1 && n <= 20, "n must be in 1..20");
    require(r < factorial(n), "rank out of range");
    unrank_into(n, r, image);
    return BL_OK;
  });
}

bl_status bl_run_command(const char* command, const char* input_json, const char* options_json, char** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(command != nullptr && out != nullptr, "null argument");
    const io::json input = input_json ? io::parse_text(input_json, "input") : io::json();
    const io::json options = options_json ? io::parse_text(options_json, "options") : io::json::object();
    require(options.is_object(), "options must be a JSON object");
    const std::string format = options.value("format", std::string("json"));
    require(format == "json" || format == "table", "format must be json or table");
    const auto report = run_command(command, input, options);
    *out = copy_out(format == "table" ? io::render_table(report) : io::dump(report) + "\n");
    return report.value("checks_passed", true) ? BL_OK : BL_ERR_CHECK;
  });
}

void bl_string_free(char* s) { std::free(s); }

bl_status bl_selftest(int only, uint64_t seed, int* passed, int* total) {
  return guarded([&] {
    require(only >= 0 && only <= kCriterionCount, "criterion out of range");
    const auto results = run_acceptance(only, seed);
    int ok = 0;
    for (const auto& r : results) ok += r.pass;
    if (passed) *passed = ok;
    if (total) *total = static_cast<int>(results.size());
    return ok == static_cast<int>(results.size()) ? BL_OK : BL_ERR_CHECK;
  });
}

}  // extern "C"
