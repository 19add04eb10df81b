#pragma once

#include <string>

#include "floerkit/io.hpp"

inline std::string data_path(const std::string& rel) { return std::string(FK_DATA_DIR) + "/" + rel; }

inline fk::GradedModule module_from_oracle(const fk::json& j) {
  fk::GradedModule m;
  for (auto& s : j) {
    fk::Summand x;
    x.free = s["kind"] == "free";
    x.h = s["h"];
    x.alex = s["alex"];
    x.order = s["order"];
    m.summands.push_back(x);
  }
  m.canonicalize();
  return m;
}

inline fk::DimTable dims_from_oracle(const fk::json& j) {
  fk::DimTable t;
  for (auto& e : j) t[{e[0].get<int>(), e[1].get<int>()}] = e[2].get<int>();
  return t;
}

inline fk::RankTable ranks_from_oracle(const fk::json& j) {
  fk::RankTable t;
  for (auto& e : j) t[{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()}] = e[3].get<int>();
  return t;
}
