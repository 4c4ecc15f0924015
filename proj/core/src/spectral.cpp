#include "cubres/spectral.hpp"

#include <sstream>

#include "cubres/arrangement.hpp"  // validation_error

namespace cubres {

namespace {

// Columns extending a basis of D (intersected with Z) to a basis of Z.
MatQ quotient_lift(const Subspace& Z, const Subspace& D) {
  MatQ zb = Z.basis_cols();
  Subspace span = D;
  int want = quotient_dim(Z, D);
  MatQ out(Z.ambient(), want);
  int kept = 0;
  for (int j = 0; j < zb.cols() && kept < want; ++j) {
    Subspace cand = span + Subspace::col_span(zb.col(j));
    if (cand.dim() > span.dim()) {
      for (int i = 0; i < zb.rows(); ++i) out.at(i, kept) = zb.at(i, j);
      ++kept;
      span = cand;
    }
  }
  return out;
}

// Coordinates of y in the quotient basis `lift` modulo span(dcols).
MatQ quotient_coords(const MatQ& lift, const MatQ& dcols, const MatQ& y) {
  MatQ full = MatQ::hcat(lift, dcols);
  MatQ c;
  if (!solve(full, y, c)) throw validation_error("page vector not in its expected span");
  MatQ out(lift.cols(), y.cols());
  for (int i = 0; i < lift.cols(); ++i)
    for (int j = 0; j < y.cols(); ++j) out.at(i, j) = c.at(i, j);
  return out;
}

struct Cell {
  Subspace Z, D;
  MatQ lift;  // quotient basis, columns
};

using PageData = std::map<std::pair<int, int>, Cell>;

Subspace cycles(const FilteredComplex& fc, int p, int n, int r) {
  // F^p C^n with differential mapping into F^{p+r} C^{n+1}.
  if (fc.c.dim(n) == 0) return Subspace::zero(0);
  Subspace fp = fc.level(p, n);
  if (fc.c.dim(n + 1) == 0) return fp;
  MatQ pre = preimage_basis(fc.c.d(n), fc.level(p + r, n + 1).basis_cols());
  return fp & Subspace::col_span(pre);
}

PageData page_data(const FilteredComplex& fc, int r) {
  PageData data;
  if (fc.c.zero()) return data;
  int pmin = fc.p_min, pmax = fc.p_max;
  for (int p = pmin; p <= pmax; ++p) {
    for (int n = fc.c.min_degree(); n <= fc.c.max_degree(); ++n) {
      if (fc.c.dim(n) == 0) continue;
      int q = n - p;
      Cell cell;
      cell.Z = cycles(fc, p, n, r);
      Subspace zprev = cycles(fc, p + 1, n, r - 1);
      Subspace boundary = Subspace::zero(fc.c.dim(n));
      if (fc.c.dim(n - 1) > 0) {
        Subspace zsrc = cycles(fc, p - r + 1, n - 1, r - 1);
        if (zsrc.dim() > 0) boundary = Subspace::col_span(fc.c.d(n - 1) * zsrc.basis_cols());
      }
      cell.D = zprev + boundary;
      cell.lift = quotient_lift(cell.Z, cell.D);
      if (cell.lift.cols() > 0) data[{p, q}] = std::move(cell);
    }
  }
  return data;
}

}  // namespace

SpectralSequence spectral_sequence(const FilteredComplex& fc, int r_max) {
  fc.validate();
  SpectralSequence ss;
  if (fc.c.zero()) return ss;
  int width = fc.p_max - fc.p_min + 1;
  if (width < 1) width = 1;
  int r_stop = std::min(r_max, width + 1);

  std::map<std::pair<int, int>, int> previous_h;  // predicted dims for next page
  bool have_prediction = false;
  for (int r = 1; r <= r_stop; ++r) {
    PageData data = page_data(fc, r);
    SpectralSequencePage page;
    page.r = r;
    for (const auto& [pq, cell] : data) page.dims[pq] = cell.lift.cols();
    if (have_prediction) {
      // E_r must agree with the cohomology of (E_{r-1}, d_{r-1}).
      std::map<std::pair<int, int>, int> got = page.dims;
      if (got != previous_h)
        throw validation_error("spectral sequence page E_" + std::to_string(r) +
                               " disagrees with H(E_" + std::to_string(r - 1) + ")");
    }
    // Differentials d_r.
    for (const auto& [pq, cell] : data) {
      auto [p, q] = pq;
      int n = p + q;
      auto tgt = data.find({p + r, q - r + 1});
      MatQ y = fc.c.d(n) * cell.lift;
      if (tgt == data.end()) {
        if (!y.is_zero()) {
          // Target quotient is zero: the image must die in its D-part.
          Subspace tprev = cycles(fc, p + r + 1, n + 1, r - 1);
          Subspace tb = Subspace::zero(fc.c.dim(n + 1));
          Subspace zsrc = cycles(fc, p + 1, n, r - 1);
          if (zsrc.dim() > 0) tb = Subspace::col_span(fc.c.d(n) * zsrc.basis_cols());
          if (!(tprev + tb).contains(Subspace::col_span(y)))
            throw validation_error("spectral sequence differential escapes its target cell");
        }
        continue;
      }
      page.d[pq] = quotient_coords(tgt->second.lift, tgt->second.D.basis_cols(), y);
    }
    // Predict the next page as cohomology of this one.
    previous_h.clear();
    for (const auto& [pq, dim_e] : page.dims) {
      auto [p, q] = pq;
      MatQ out = page.d.count(pq) ? page.d.at(pq) : MatQ::zero(0, dim_e);
      int ker = dim_e - rank(out);
      auto init = page.d.find({p - r, q + r - 1});
      int im = (init != page.d.end()) ? rank(init->second) : 0;
      int h = ker - im;
      if (h > 0) previous_h[pq] = h;
    }
    have_prediction = true;
    ss.pages.push_back(std::move(page));
  }

  // Limit page and degeneration point.
  ss.einf = previous_h;
  ss.degenerated_at = r_stop + 1;
  for (int r = r_stop; r >= 1; --r) {
    bool all_zero = true;
    for (const auto& [pq, m] : ss.pages[r - 1].d)
      if (!m.is_zero()) { all_zero = false; break; }
    if (!all_zero) break;
    ss.degenerated_at = r;
  }

  // Abutment and its filtration-graded dimensions.
  ss.abutment = cohomology_dims(fc.c);
  for (int n = fc.c.min_degree(); n <= fc.c.max_degree(); ++n) {
    if (fc.c.dim(n) == 0) continue;
    Subspace ker = Subspace::col_span(kernel_basis(fc.c.d(n)));
    Subspace im = (fc.c.dim(n - 1) > 0) ? Subspace::col_span(fc.c.d(n - 1))
                                        : Subspace::zero(fc.c.dim(n));
    auto filtered_h = [&](int p) {
      Subspace s = (fc.level(p, n) & ker) + im;
      return quotient_dim(s, im);
    };
    for (int p = fc.p_min; p <= fc.p_max; ++p) {
      int g = filtered_h(p) - filtered_h(p + 1);
      if (g != 0) ss.graded_abutment[{p, n}] = g;
    }
  }
  // Convergence cross-check: E_infinity equals the graded abutment.
  std::map<std::pair<int, int>, int> einf_as_pn;
  for (const auto& [pq, d] : ss.einf) einf_as_pn[{pq.first, pq.first + pq.second}] = d;
  if (einf_as_pn != ss.graded_abutment)
    throw validation_error("spectral sequence limit page disagrees with the graded abutment");
  return ss;
}

std::map<std::pair<int, int>, MatQ> page_map(const FilteredComplex& a, const FilteredComplex& b,
                                             const ChainMap& f, int r) {
  f.validate();
  if (!(f.source == a.c) || !(f.target == b.c))
    throw validation_error("page_map: chain map endpoints do not match the filtered complexes");
  // Filtered compatibility.
  for (int p = std::min(a.p_min, b.p_min); p <= std::max(a.p_max, b.p_max) + 1; ++p)
    for (int n = a.c.min_degree(); n <= a.c.max_degree(); ++n) {
      if (a.c.dim(n) == 0 || f.at(n).rows() == 0) continue;
      Subspace src = a.level(p, n);
      if (src.dim() == 0) continue;
      Subspace img = Subspace::col_span(f.at(n) * src.basis_cols());
      if (!b.level(p, n).contains(img)) throw validation_error("page_map: map does not respect filtrations");
    }
  PageData da = page_data(a, r);
  PageData db = page_data(b, r);
  std::map<std::pair<int, int>, MatQ> out;
  for (const auto& [pq, cell] : da) {
    auto [p, q] = pq;
    int n = p + q;
    auto tgt = db.find(pq);
    if (tgt == db.end()) {
      out[pq] = MatQ::zero(0, cell.lift.cols());
      continue;
    }
    MatQ y = f.at(n) * cell.lift;
    out[pq] = quotient_coords(tgt->second.lift, tgt->second.D.basis_cols(), y);
  }
  return out;
}

std::string page_to_text(const SpectralSequencePage& page) {
  std::ostringstream os;
  os << "E_" << page.r << " page:\n";
  if (page.dims.empty()) {
    os << "  (zero)\n";
    return os.str();
  }
  int pmin = page.dims.begin()->first.first, pmax = pmin, qmin = page.dims.begin()->first.second,
      qmax = qmin;
  for (const auto& [pq, d] : page.dims) {
    pmin = std::min(pmin, pq.first);
    pmax = std::max(pmax, pq.first);
    qmin = std::min(qmin, pq.second);
    qmax = std::max(qmax, pq.second);
  }
  for (int q = qmax; q >= qmin; --q) {
    os << "  q=" << q << ":";
    for (int p = pmin; p <= pmax; ++p) {
      auto it = page.dims.find({p, q});
      os << " " << (it == page.dims.end() ? 0 : it->second);
    }
    os << "\n";
  }
  os << "  p =";
  for (int p = pmin; p <= pmax; ++p) os << " " << p;
  os << "\n";
  return os.str();
}

std::string page_to_csv(const SpectralSequencePage& page) {
  std::ostringstream os;
  os << "r,p,q,dim\n";
  for (const auto& [pq, d] : page.dims) os << page.r << "," << pq.first << "," << pq.second << "," << d << "\n";
  return os.str();
}

}  // namespace cubres
