#include "qcov/cleaving.hpp"

namespace qcov {

const Mat& RetractionTable::at(std::size_t a, std::size_t b) const {
  return maps[a * cert->functor().source().object_count() + b];
}

RetractionTable retraction_table(const CoveringCertificate& cert) {
  const LinearFunctor& f = cert.functor();
  const BoundCategory& a_cat = f.source();
  const Category& b_cat = f.target();
  std::size_t n = a_cat.object_count();

  RetractionTable table;
  table.cert = &cert;
  table.maps.resize(n * n);
  table.retraction_of_f = true;
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t i = f.object_image(a);
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t j = f.object_image(b);
      Mat e(a_cat.hom_dim(a, b), b_cat.hom_dim(i, j));
      for (std::size_t k = 0; k < b_cat.hom_dim(i, j); ++k) {
        Vec basis(b_cat.hom_dim(i, j), 0);
        basis[k] = 1;
        e.set_col(k, cert.lift_in(i, b, basis).component_at(a));
      }
      // E(a,b) . F(a,b) = id by uniqueness of in-lifts
      Mat ef = mat_mul(a_cat.field(), e, f.hom_matrix(a, b));
      if (ef != Mat::identity(a_cat.hom_dim(a, b))) table.retraction_of_f = false;
      table.maps[a * n + b] = std::move(e);
    }
  }
  return table;
}

SquaresReport check_naturality_squares(const RetractionTable& table) {
  const CoveringCertificate& cert = *table.cert;
  const LinearFunctor& f = cert.functor();
  const BoundCategory& a_cat = f.source();
  const Category& b_cat = f.target();
  const PrimeField& F = a_cat.field();
  const Quiver& q = a_cat.quiver();
  std::size_t n = a_cat.object_count();

  SquaresReport rep;
  rep.square1 = true;
  rep.square2 = true;

  auto post_compose_a = [&](std::size_t a, std::uint32_t arrow) {
    // A(a, beta): A(a,b) -> A(a,b') for beta: b -> b'
    std::size_t b = q.arrow(arrow).source, b2 = q.arrow(arrow).target;
    Morphism beta = a_cat.class_of_arrow(arrow);
    Mat m(a_cat.hom_dim(a, b2), a_cat.hom_dim(a, b));
    for (std::size_t k = 0; k < a_cat.hom_dim(a, b); ++k) {
      Vec unit(a_cat.hom_dim(a, b), 0);
      unit[k] = 1;
      m.set_col(k, a_cat.compose(a, b, b2, beta.coords, unit));
    }
    return m;
  };
  auto post_compose_b = [&](std::size_t i, std::uint32_t arrow) {
    // B(i, F beta): B(i,Fb) -> B(i,Fb')
    std::size_t fb = f.object_image(q.arrow(arrow).source);
    std::size_t fb2 = f.object_image(q.arrow(arrow).target);
    Mat m(b_cat.hom_dim(i, fb2), b_cat.hom_dim(i, fb));
    for (std::size_t k = 0; k < b_cat.hom_dim(i, fb); ++k) {
      Vec unit(b_cat.hom_dim(i, fb), 0);
      unit[k] = 1;
      m.set_col(k, b_cat.compose(i, fb, fb2, f.arrow_image(arrow), unit));
    }
    return m;
  };

  for (std::uint32_t arrow = 0; arrow < q.arrow_count(); ++arrow) {
    std::size_t b = q.arrow(arrow).source, b2 = q.arrow(arrow).target;
    for (std::size_t a = 0; a < n; ++a) {
      Mat lhs = mat_mul(F, post_compose_a(a, arrow), table.at(a, b));
      Mat rhs = mat_mul(F, table.at(a, b2), post_compose_b(f.object_image(a), arrow));
      if (lhs != rhs && rep.square1) {
        rep.square1 = false;
        rep.witness1 = "post-composition square fails at (object " + a_cat.object_name(a) +
                       ", arrow " + q.arrow(arrow).name + ")";
      }
    }
  }

  auto pre_compose_a = [&](std::uint32_t arrow, std::size_t b) {
    // A(alpha, b): A(a',b) -> A(a,b) for alpha: a -> a'
    std::size_t a = q.arrow(arrow).source, a2 = q.arrow(arrow).target;
    Morphism alpha = a_cat.class_of_arrow(arrow);
    Mat m(a_cat.hom_dim(a, b), a_cat.hom_dim(a2, b));
    for (std::size_t k = 0; k < a_cat.hom_dim(a2, b); ++k) {
      Vec unit(a_cat.hom_dim(a2, b), 0);
      unit[k] = 1;
      m.set_col(k, a_cat.compose(a, a2, b, unit, alpha.coords));
    }
    return m;
  };
  auto pre_compose_b = [&](std::uint32_t arrow, std::size_t j) {
    std::size_t fa = f.object_image(q.arrow(arrow).source);
    std::size_t fa2 = f.object_image(q.arrow(arrow).target);
    Mat m(b_cat.hom_dim(fa, j), b_cat.hom_dim(fa2, j));
    for (std::size_t k = 0; k < b_cat.hom_dim(fa2, j); ++k) {
      Vec unit(b_cat.hom_dim(fa2, j), 0);
      unit[k] = 1;
      m.set_col(k, b_cat.compose(fa, fa2, j, unit, f.arrow_image(arrow)));
    }
    return m;
  };

  for (std::uint32_t arrow = 0; arrow < q.arrow_count(); ++arrow) {
    std::size_t a = q.arrow(arrow).source, a2 = q.arrow(arrow).target;
    for (std::size_t b = 0; b < n; ++b) {
      Mat lhs = mat_mul(F, pre_compose_a(arrow, b), table.at(a2, b));
      Mat rhs = mat_mul(F, table.at(a, b), pre_compose_b(arrow, f.object_image(b)));
      if (lhs != rhs && rep.square2) {
        rep.square2 = false;
        rep.witness2 = "pre-composition square fails at (arrow " + q.arrow(arrow).name +
                       ", object " + a_cat.object_name(b) + ")";
      }
    }
  }
  return rep;
}

EpsilonResult epsilon(const CoveringCertificate& cert, const Representation& x) {
  const LinearFunctor& f = cert.functor();
  EpsilonResult out;
  Transported down = push_down(cert, x);
  out.pushed = down.rep;
  out.layout = down.layout;
  out.big = std::make_shared<Representation>(pull_up(f, *down.rep));

  out.eps.source = &x;
  out.eps.target = out.big.get();
  std::size_t n = f.source().object_count();
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t i = f.object_image(a);
    Mat inc(out.big->dim(a), x.dim(a));
    std::size_t offset = out.layout.offset_of(i, a);
    for (std::size_t r = 0; r < x.dim(a); ++r) inc(offset + r, r) = 1;
    out.eps.components.push_back(std::move(inc));
  }
  if (!is_rep_morphism(out.eps))
    throw InternalError("epsilon is not a module morphism; the certificate is broken");
  return out;
}

CleaveResult cleaving_test(const CoveringCertificate& cert, const Representation& x,
                           std::uint64_t seed) {
  CleaveResult out;
  out.embedding = epsilon(cert, x);
  out.retraction = solve_retraction(out.embedding.eps);
  out.splits = out.retraction.has_value();
  SummandOutcome summand = is_direct_summand(x, *out.embedding.big, seed);
  out.summand_corroborates = summand.summand == out.splits;
  return out;
}

}  // namespace qcov
