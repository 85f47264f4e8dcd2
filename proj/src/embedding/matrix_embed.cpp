#include <cmath>

#include <json.hpp>

#include "qbn/embedding.hpp"

namespace qbn::embedding {

ProbabilityMatrix has_matrix(const AmplitudeMatrix& a) {
  return a.cwiseAbs2();
}

CBNet has_net(const QBNet& net) {
  CBNet out;
  out.flavor = Flavor::cb;
  for (const Node& node : net.nodes) {
    if (!node.amp)
      throw Error(ErrorKind::validation,
                  "node \"" + node.id + "\" has no amplitude payload");
    ProbabilityMatrix p = has_matrix(*node.amp);
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      double sum = p.col(c).sum();
      if (std::abs(sum - 1.0) > kStochasticTol)
        throw Error(ErrorKind::validation,
                    "node \"" + node.id + "\": squared-magnitude column " +
                        std::to_string(c) + " sums to " + fmt17(sum));
    }
    Node copy = node;
    copy.amp.reset();
    copy.cpt = std::move(p);
    out.nodes.push_back(std::move(copy));
  }
  return out;
}

double unitarity_error(const AmplitudeMatrix& u) {
  AmplitudeMatrix g = u.adjoint() * u;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

AmplitudeMatrix gram_schmidt_complete(const AmplitudeMatrix& columns) {
  const Eigen::Index n = columns.rows();
  const Eigen::Index k = columns.cols();
  if (k > n)
    throw Error(ErrorKind::validation,
                "more columns than rows: " + std::to_string(k) + " > " +
                    std::to_string(n));

  if (k > 0) {
    AmplitudeMatrix gram = columns.adjoint() * columns;
    gram.diagonal().array() -= 1.0;
    double dev = gram.cwiseAbs().maxCoeff();
    if (dev > kStochasticTol)
      throw Error(ErrorKind::validation,
                  "input columns are not orthonormal (max Gram deviation " +
                      fmt17(dev) + ")");
  }

  AmplitudeMatrix u(n, n);
  u.leftCols(k) = columns;
  Eigen::Index have = k;
  for (Eigen::Index cand = 0; cand < n && have < n; ++cand) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v(cand) = 1.0;
    // two passes of modified Gram-Schmidt keep the loss of orthogonality
    // near machine precision
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j < have; ++j)
        v -= u.col(j).dot(v) * u.col(j);
    double norm = v.norm();
    if (norm <= 1e-9) continue;  // candidate already spanned
    u.col(have++) = v / norm;
  }
  if (have < n)
    throw Error(ErrorKind::logic,
                "completion stalled at " + std::to_string(have) + " of " +
                    std::to_string(n) + " columns");
  return u;
}

ProbabilityMatrix recovered_probability(const UnitaryEmbedding& e) {
  ProbabilityMatrix p = ProbabilityMatrix::Zero(e.ny, e.nx);
  for (std::size_t x = 0; x < e.nx; ++x)
    for (std::size_t sink = 0; sink < e.nsink; ++sink)
      for (std::size_t y = 0; y < e.ny; ++y)
        p(y, x) += std::norm(e.entry(y, sink, x, UnitaryEmbedding::source_fixed));
  return p;
}

UnitaryEmbedding embed_probability_matrix(const ProbabilityMatrix& p,
                                          const std::optional<AmplitudeMatrix>& basis) {
  const Eigen::Index ny = p.rows();
  const Eigen::Index nx = p.cols();
  for (Eigen::Index c = 0; c < nx; ++c) {
    double sum = 0.0;
    for (Eigen::Index r = 0; r < ny; ++r) {
      if (p(r, c) < 0.0)
        throw Error(ErrorKind::validation,
                    "negative probability " + fmt17(p(r, c)) + " at row " +
                        std::to_string(r) + ", column " + std::to_string(c));
      sum += p(r, c);
    }
    if (std::abs(sum - 1.0) > kStochasticTol)
      throw Error(ErrorKind::validation,
                  "column " + std::to_string(c) + " sums to " + fmt17(sum));
  }

  AmplitudeMatrix xi;
  if (basis) {
    if (basis->rows() != nx || basis->cols() != nx)
      throw Error(ErrorKind::validation,
                  "sink basis must be " + std::to_string(nx) + "x" +
                      std::to_string(nx));
    AmplitudeMatrix gram = basis->adjoint() * (*basis);
    gram.diagonal().array() -= 1.0;
    double dev = gram.cwiseAbs().maxCoeff();
    if (dev > kStochasticTol)
      throw Error(ErrorKind::validation,
                  "sink basis is not orthonormal (max Gram deviation " +
                      fmt17(dev) + ")");
    xi = *basis;
  } else {
    xi = AmplitudeMatrix::Identity(nx, nx);
  }

  const Eigen::Index dim = ny * nx;
  AmplitudeMatrix first(dim, nx);
  for (Eigen::Index x = 0; x < nx; ++x)
    for (Eigen::Index sink = 0; sink < nx; ++sink)
      for (Eigen::Index y = 0; y < ny; ++y)
        first(y + ny * sink, x) = std::sqrt(p(y, x)) * xi(sink, x);

  UnitaryEmbedding e;
  e.matrix = gram_schmidt_complete(first);
  e.ny = static_cast<std::size_t>(ny);
  e.nsink = static_cast<std::size_t>(nx);
  e.nx = static_cast<std::size_t>(nx);
  e.nsrc = static_cast<std::size_t>(ny);
  return e;
}

std::string serialize_embedding(const UnitaryEmbedding& e) {
  std::string out = "{\n  \"rows\": [" + std::to_string(e.ny) + ", " +
                    std::to_string(e.nsink) + "],\n  \"cols\": [" +
                    std::to_string(e.nx) + ", " + std::to_string(e.nsrc) +
                    "],\n  \"matrix\": [";
  for (Eigen::Index r = 0; r < e.matrix.rows(); ++r) {
    out += r ? ",\n    [" : "\n    [";
    for (Eigen::Index c = 0; c < e.matrix.cols(); ++c) {
      if (c) out += ", ";
      out += '[' + fmt17(e.matrix(r, c).real()) + ", " +
             fmt17(e.matrix(r, c).imag()) + ']';
    }
    out += ']';
  }
  out += "\n  ]\n}\n";
  return out;
}

UnitaryEmbedding parse_embedding(const std::string& json_text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& err) {
    throw Error(ErrorKind::io, std::string("invalid JSON: ") + err.what());
  }
  auto need_pair = [&](const char* key) -> std::pair<std::size_t, std::size_t> {
    if (!root.contains(key) || !root[key].is_array() || root[key].size() != 2)
      throw Error(ErrorKind::io, std::string("\"") + key + "\" must be [n, m]");
    return {root[key][0].get<std::size_t>(), root[key][1].get<std::size_t>()};
  };
  UnitaryEmbedding e;
  std::tie(e.ny, e.nsink) = need_pair("rows");
  std::tie(e.nx, e.nsrc) = need_pair("cols");
  if (!root.contains("matrix") || !root["matrix"].is_array())
    throw Error(ErrorKind::io, "\"matrix\" must be an array of rows");
  std::size_t dim = e.ny * e.nsink;
  if (root["matrix"].size() != dim || e.nx * e.nsrc != dim)
    throw Error(ErrorKind::io, "matrix shape does not match rows/cols");
  e.matrix.resize(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto& row = root["matrix"][r];
    if (!row.is_array() || row.size() != dim)
      throw Error(ErrorKind::io, "matrix row " + std::to_string(r) + " malformed");
    for (std::size_t c = 0; c < dim; ++c) {
      const auto& entry = row[c];
      if (!entry.is_array() || entry.size() != 2)
        throw Error(ErrorKind::io, "matrix entries must be [re, im]");
      e.matrix(r, c) = complexd(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return e;
}

}  // namespace qbn::embedding
