#pragma once

/// JSON problem-document round trip.  Layout:
///
/// {
///   "n": 4, "m": 2, "bc": "periodic",
///   "coefficients": {
///     "P2": {
///       "explicit": {"<freq>": [[[re,im], ...], ...]},       // m x m of [re,im]
///       "tail": {"s": 0.5, "amp_pos": [[[re,im],...],...],
///                "amp_neg": ..., "alternating": false}
///     },
///     "P3": {...}
///   }
/// }
///
/// "s" sets both decay exponents; "s_pos"/"s_neg" set them independently.
/// A missing "P<nu>" key is the zero coefficient.  An optional integer
/// "start" pins the first tail frequency explicitly.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rieszspec/operator_spec.hpp"

namespace rieszspec {

using Json = nlohmann::ordered_json;

namespace detail {

inline Matrix matrix_from_json(const Json& j, int m, const std::string& where)
{
  if (!j.is_array())
    fail(Errc::IoError, where + ": expected an array of matrix rows");
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(j.size()), 0);
  Eigen::Index cols = -1;
  for (std::size_t r = 0; r < j.size(); ++r)
  {
    const Json& row = j[r];
    if (!row.is_array())
      fail(Errc::IoError, where + ": expected row " + std::to_string(r) + " to be an array");
    if (cols < 0)
    {
      cols = static_cast<Eigen::Index>(row.size());
      out.resize(static_cast<Eigen::Index>(j.size()), cols);
    }
    if (static_cast<Eigen::Index>(row.size()) != cols)
      fail(Errc::IoError, where + ": ragged matrix rows");
    for (std::size_t c = 0; c < row.size(); ++c)
    {
      const Json& cell = row[c];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
        fail(Errc::IoError, where + ": entries must be [re, im] pairs");
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  (void)m;
  return out;
}

inline Json matrix_to_json(const Matrix& mat)
{
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < mat.rows(); ++r)
  {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < mat.cols(); ++c)
      row.push_back(Json::array({mat(r, c).real(), mat(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline int parse_frequency_key(const std::string& key, const std::string& where)
{
  try
  {
    std::size_t used = 0;
    const int r = std::stoi(key, &used);
    if (used != key.size())
      throw std::invalid_argument(key);
    return r;
  }
  catch (const std::exception&)
  {
    fail(Errc::IoError, where + ": frequency key '" + key + "' is not an integer");
  }
}

}  // namespace detail

inline OperatorSpec problem_from_json(const Json& doc)
{
  if (!doc.is_object())
    fail(Errc::IoError, "problem document must be a JSON object");
  for (const char* key : {"n", "m", "bc"})
    if (!doc.contains(key))
      fail(Errc::IoError, std::string("problem document lacks required key '") + key + "'");

  const int n = doc["n"].get<int>();
  const int m = doc["m"].get<int>();
  const std::string bc_str = doc["bc"].get<std::string>();
  Bc bc;
  if (bc_str == "periodic")
    bc = Bc::Periodic;
  else if (bc_str == "antiperiodic")
    bc = Bc::Antiperiodic;
  else
    fail(Errc::IoError, "bc must be 'periodic' or 'antiperiodic', got '" + bc_str + "'");

  OperatorSpec spec = make_spec(n, m, bc);
  if (spec.coefficients.empty() && n >= 2)
    spec.coefficients.assign(n - 1, FourierMatrixSeries(m));

  if (doc.contains("coefficients"))
  {
    const Json& coeffs = doc["coefficients"];
    if (!coeffs.is_object())
      fail(Errc::IoError, "'coefficients' must be an object keyed by P2..Pn");
    for (const auto& [key, body] : coeffs.items())
    {
      if (key.size() < 2 || key[0] != 'P')
        fail(Errc::IoError, "coefficient key '" + key + "' must look like P<nu>");
      const int nu = detail::parse_frequency_key(key.substr(1), "coefficient key " + key);
      if (nu < 2 || nu > n)
        fail(Errc::IoError, "coefficient key '" + key + "' is outside P2..P" + std::to_string(n));
      FourierMatrixSeries series(m);
      if (body.contains("explicit"))
      {
        for (const auto& [freq_key, mat] : body["explicit"].items())
        {
          const int r = detail::parse_frequency_key(freq_key, key + ".explicit");
          series.set_coefficient(r, detail::matrix_from_json(mat, m, key + ".explicit[" + freq_key + "]"));
        }
      }
      if (body.contains("tail"))
      {
        const Json& tail = body["tail"];
        TailLaw law;
        if (tail.contains("s"))
          law.s_pos = law.s_neg = tail["s"].get<double>();
        if (tail.contains("s_pos"))
          law.s_pos = tail["s_pos"].get<double>();
        if (tail.contains("s_neg"))
          law.s_neg = tail["s_neg"].get<double>();
        if (!tail.contains("amp_pos") || !tail.contains("amp_neg"))
          fail(Errc::IoError, key + ".tail needs amp_pos and amp_neg");
        law.amp_pos = detail::matrix_from_json(tail["amp_pos"], m, key + ".tail.amp_pos");
        law.amp_neg = detail::matrix_from_json(tail["amp_neg"], m, key + ".tail.amp_neg");
        law.alternating = tail.value("alternating", false);
        if (tail.contains("start"))
          law.start = tail["start"].get<int>();
        series.set_tail(std::move(law));
      }
      spec.coefficients[nu - 2] = std::move(series);
    }
  }
  return spec;
}

inline Json problem_to_json(const OperatorSpec& spec)
{
  Json doc;
  doc["n"] = spec.n;
  doc["m"] = spec.m;
  doc["bc"] = bc_name(spec.bc);
  Json coeffs = Json::object();
  for (int nu = 2; nu <= spec.n; ++nu)
  {
    const FourierMatrixSeries& series = spec.P(nu);
    if (series.is_zero())
      continue;
    Json body = Json::object();
    if (!series.explicit_coefficients().empty())
    {
      Json exp = Json::object();
      for (const auto& [r, coef] : series.explicit_coefficients())
        exp[std::to_string(r)] = detail::matrix_to_json(coef);
      body["explicit"] = std::move(exp);
    }
    if (const TailLaw* tail = series.tail())
    {
      Json t = Json::object();
      if (tail->s_pos == tail->s_neg)
        t["s"] = tail->s_pos;
      else
      {
        t["s_pos"] = tail->s_pos;
        t["s_neg"] = tail->s_neg;
      }
      t["amp_pos"] = detail::matrix_to_json(tail->amp_pos);
      t["amp_neg"] = detail::matrix_to_json(tail->amp_neg);
      t["alternating"] = tail->alternating;
      if (tail->start)
        t["start"] = *tail->start;
      body["tail"] = std::move(t);
    }
    coeffs["P" + std::to_string(nu)] = std::move(body);
  }
  doc["coefficients"] = std::move(coeffs);
  return doc;
}

inline OperatorSpec load_problem_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    fail(Errc::IoError, "cannot open problem file '" + path + "'");
  Json doc;
  try
  {
    in >> doc;
  }
  catch (const std::exception& e)
  {
    fail(Errc::IoError, "cannot parse '" + path + "': " + e.what());
  }
  return problem_from_json(doc);
}

}  // namespace rieszspec
