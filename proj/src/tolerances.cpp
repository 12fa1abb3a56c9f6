#include "tdc/tolerances.hpp"

namespace tdc {

namespace {
Tolerances& storage() {
  static Tolerances t;
  return t;
}
}  // namespace

const Tolerances& Tolerances::current() { return storage(); }

void Tolerances::set_current(const Tolerances& t) { storage() = t; }

bool Tolerances::set(std::string_view key, double value) {
  for (auto& [name, field] : std::initializer_list<std::pair<std::string_view, double*>>{
           {"herm", &herm},
           {"trace", &trace},
           {"cptp", &cptp},
           {"povm", &povm},
           {"psd", &psd},
           {"schmidt", &schmidt},
           {"eig", &eig},
           {"margin", &margin}}) {
    if (name == key) {
      *field = value;
      return true;
    }
  }
  return false;
}

std::vector<std::pair<std::string, double>> Tolerances::entries() const {
  return {{"herm", herm}, {"trace", trace},     {"cptp", cptp}, {"povm", povm},
          {"psd", psd},   {"schmidt", schmidt}, {"eig", eig},   {"margin", margin}};
}

}  // namespace tdc
