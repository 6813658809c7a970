#include "vidarcy/assembly.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vidarcy/parallel.hpp"

namespace vidarcy {

namespace {

// Quadrature weights sum to the reference measure; this rescales them to the
// physical cell.
double reference_scale(int dim) { return dim == 2 ? 2.0 : 6.0; }

double mean_exact_pressure_p0(const ProblemSpec& problem, int cell) {
    if (!problem.exact_pressure) return 0.0;
    const CellGeometry g = cell_geometry(*problem.mesh, cell);
    const QuadratureRule& rule = simplex_quadrature(g.dim, 5);
    double mean = 0.0;
    for (int q = 0; q < rule.size(); ++q)
        mean += rule.weights[q] * reference_scale(g.dim) *
                problem.exact_pressure(physical_point(g, rule.points[q]));
    return mean;  // weights now sum to 1: this is the cell average
}

}  // namespace

Assembler::Assembler(const ProblemSpec& problem, Formulation formulation, int n_threads)
    : problem_(&problem), formulation_(formulation), n_threads_(n_threads < 1 ? 1 : n_threads) {
    if (problem.mesh == nullptr) throw std::invalid_argument("problem has no mesh");
    const Mesh& mesh = *problem.mesh;
    if (mesh.n_facets() == 0) throw std::invalid_argument("mesh was not finalized");

    const int dim = mesh.dim;
    if (formulation_ == Formulation::RT0) {
        n_u_loc_ = dim + 1;
        n_p_loc_ = 1;
        rule_ = &simplex_quadrature(dim, 2);
    } else {
        n_u_loc_ = (dim + 1) * dim;
        n_p_loc_ = dim + 1;
        rule_ = &simplex_quadrature(dim, 3);
    }

    geometry_.reserve(mesh.n_cells());
    for (int c = 0; c < mesh.n_cells(); ++c) geometry_.push_back(cell_geometry(mesh, c));

    build_dofmaps();
    build_patterns();
    build_scatter();
    build_boundary_load();
}

void Assembler::build_dofmaps() {
    const Mesh& mesh = *problem_->mesh;
    if (formulation_ == Formulation::RT0) {
        u_dofs_ = make_dofmap(mesh, SpaceKind::RT0Flux);
        p_dofs_ = make_dofmap(mesh, SpaceKind::P0Pressure);
    } else {
        u_dofs_ = make_dofmap(mesh, SpaceKind::P1VectorVelocity);
        p_dofs_ = make_dofmap(mesh, SpaceKind::P1Pressure);
    }

    for (const auto& [tag, fn] : problem_->velocity_bc) apply_velocity_dirichlet(mesh, u_dofs_, tag, fn);
    if (formulation_ == Formulation::VMS)
        for (const auto& [tag, fn] : problem_->pressure_bc) apply_pressure_dirichlet(mesh, p_dofs_, tag, fn);
    // RT0 pressure boundaries enter weakly through the boundary load.

    if (problem_->pin_pressure_dof) {
        // Fix the gauge at the pressure dof nearest the domain centroid.  A
        // boundary dof would work too, but its pointwise error decays slower
        // than the field's L2 error and would leak into the whole field as a
        // constant.
        Vec3 centroid{0.0, 0.0, 0.0};
        double volume = 0.0;
        for (int c = 0; c < mesh.n_cells(); ++c) {
            centroid += mesh.cell_centroid(c) * geometry_[c].measure;
            volume += geometry_[c].measure;
        }
        centroid = centroid * (1.0 / volume);

        const bool cellwise = formulation_ == Formulation::RT0;
        const int n_candidates = cellwise ? mesh.n_cells() : mesh.n_vertices();
        int dof = 0;
        double best = std::numeric_limits<double>::max();
        for (int i = 0; i < n_candidates; ++i) {
            const Vec3 d = (cellwise ? mesh.cell_centroid(i) : mesh.vertices[i]) - centroid;
            if (dot(d, d) < best) {
                best = dot(d, d);
                dof = i;
            }
        }
        const double value = !problem_->exact_pressure ? 0.0
                             : cellwise ? mean_exact_pressure_p0(*problem_, dof)
                                        : problem_->exact_pressure(mesh.vertices[dof]);
        pin_dof(p_dofs_, dof, value);
    }
}

void Assembler::build_patterns() {
    const Mesh& mesh = *problem_->mesh;
    const int n_u = u_dofs_.n_dofs;
    const int n_p = p_dofs_.n_dofs;

    std::vector<std::vector<int>> uu(n_u), up(n_u), pu(n_p), pp(n_p);
    int du[12], dp[4];
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const int nu = cell_dofs(mesh, u_dofs_, c, du);
        const int np = cell_dofs(mesh, p_dofs_, c, dp);
        for (int i = 0; i < nu; ++i) {
            for (int j = 0; j < nu; ++j) uu[du[i]].push_back(du[j]);
            for (int j = 0; j < np; ++j) up[du[i]].push_back(dp[j]);
        }
        for (int i = 0; i < np; ++i) {
            for (int j = 0; j < nu; ++j) pu[dp[i]].push_back(du[j]);
            for (int j = 0; j < np; ++j) pp[dp[i]].push_back(dp[j]);
        }
    }
    proto_uu_ = SparseMatrix::from_pattern(n_u, n_u, std::move(uu));
    proto_up_ = SparseMatrix::from_pattern(n_u, n_p, std::move(up));
    proto_pu_ = SparseMatrix::from_pattern(n_p, n_u, std::move(pu));
    proto_pp_ = SparseMatrix::from_pattern(n_p, n_p, std::move(pp));
}

void Assembler::build_scatter() {
    const Mesh& mesh = *problem_->mesh;
    const int nc = mesh.n_cells();
    pos_uu_.resize(static_cast<size_t>(nc) * n_u_loc_ * n_u_loc_);
    pos_up_.resize(static_cast<size_t>(nc) * n_u_loc_ * n_p_loc_);
    pos_pu_.resize(static_cast<size_t>(nc) * n_p_loc_ * n_u_loc_);
    pos_pp_.resize(static_cast<size_t>(nc) * n_p_loc_ * n_p_loc_);

    int du[12], dp[4];
    for (int c = 0; c < nc; ++c) {
        const int nu = cell_dofs(mesh, u_dofs_, c, du);
        const int np = cell_dofs(mesh, p_dofs_, c, dp);
        for (int i = 0; i < nu; ++i) {
            for (int j = 0; j < nu; ++j)
                pos_uu_[(static_cast<size_t>(c) * nu + i) * nu + j] = proto_uu_.find(du[i], du[j]);
            for (int j = 0; j < np; ++j)
                pos_up_[(static_cast<size_t>(c) * nu + i) * np + j] = proto_up_.find(du[i], dp[j]);
        }
        for (int i = 0; i < np; ++i) {
            for (int j = 0; j < nu; ++j)
                pos_pu_[(static_cast<size_t>(c) * np + i) * nu + j] = proto_pu_.find(dp[i], du[j]);
            for (int j = 0; j < np; ++j)
                pos_pp_[(static_cast<size_t>(c) * np + i) * np + j] = proto_pp_.find(dp[i], dp[j]);
        }
    }
}

// The boundary pressure term of the velocity residual does not depend on the
// state: integrate it once.
void Assembler::build_boundary_load() {
    const Mesh& mesh = *problem_->mesh;
    boundary_fu_.assign(u_dofs_.n_dofs, 0.0);
    if (problem_->pressure_bc.empty()) return;

    const FacetQuadrature& fq = facet_quadrature(mesh.dim, 5);
    for (int f = 0; f < mesh.n_facets(); ++f) {
        const Facet& facet = mesh.facets[f];
        if (facet.cells[1] != -1) continue;
        const auto it = problem_->pressure_bc.find(facet.tag);
        if (it == problem_->pressure_bc.end()) continue;

        const auto xs = mesh.facet_vertex_coords(f);
        if (formulation_ == Formulation::RT0) {
            // Normal trace of the facet's own basis is sign/|F|, so the term
            // reduces to sign times the facet mean of the boundary pressure.
            double mean = 0.0;
            for (size_t q = 0; q < fq.weights.size(); ++q) {
                Vec3 x;
                for (int v = 0; v < mesh.dim; ++v) x += xs[v] * fq.points[q][v];
                mean += fq.weights[q] * it->second(x);
            }
            boundary_fu_[f] += facet_orientation(mesh, facet.cells[0], facet.local_index[0]) * mean;
        } else {
            const Vec3 n = mesh.facet_outward_normal(f);
            const double measure = mesh.facet_measure(f);
            for (int v = 0; v < mesh.dim; ++v) {
                double w = 0.0;
                for (size_t q = 0; q < fq.weights.size(); ++q) {
                    Vec3 x;
                    for (int s = 0; s < mesh.dim; ++s) x += xs[s] * fq.points[q][s];
                    w += fq.weights[q] * fq.points[q][v] * it->second(x);
                }
                const int vertex = facet.vertices[v];
                for (int k = 0; k < mesh.dim; ++k)
                    boundary_fu_[vertex * mesh.dim + k] += n[k] * measure * w;
            }
        }
    }
}

BlockSystem Assembler::make_system() const {
    BlockSystem sys;
    sys.Juu = proto_uu_;
    sys.Jup = proto_up_;
    sys.Jpu = proto_pu_;
    sys.Jpp = proto_pp_;
    sys.Fu.assign(u_dofs_.n_dofs, 0.0);
    sys.Fp.assign(p_dofs_.n_dofs, 0.0);
    return sys;
}

void Assembler::cell_range_rt0(int begin, int end, const double* u, const double* p,
                               bool with_jacobian, const Sink& sink) const {
    const Mesh& mesh = *problem_->mesh;
    const int dim = mesh.dim;
    const int nf = dim + 1;
    const QuadratureRule& rule = *rule_;

    int dofs[4];
    Vec3 phi[4];
    double div[4];
    for (int cell = begin; cell < end; ++cell) {
        try {
            const CellGeometry& g = geometry_[cell];
            cell_dofs(mesh, u_dofs_, cell, dofs);
            double coeff[4];
            for (int l = 0; l < nf; ++l) coeff[l] = u[dofs[l]];
            const double pc = p[cell];

            double fu_loc[4] = {0, 0, 0, 0};
            double fp_loc = 0.0;
            double uu_loc[16] = {0};
            double up_loc[4] = {0, 0, 0, 0};

            const double scale = reference_scale(dim) * g.measure;
            for (int q = 0; q < rule.size(); ++q) {
                const Vec3 x = physical_point(g, rule.points[q]);
                eval_rt0_basis(g, x, phi, div);
                Vec3 uh;
                for (int l = 0; l < nf; ++l) uh += phi[l] * coeff[l];

                const Drag dr = drag(problem_->viscosity, problem_->permeability, pc, x, dim);
                const double qw = rule.weights[q] * scale;

                Vec3 load;
                if (problem_->body_force) load = problem_->body_force(x);
                const Vec3 ru = dr.alpha.apply(uh) - load;
                for (int i = 0; i < nf; ++i) fu_loc[i] += qw * dot(ru, phi[i]);
                if (problem_->source) fp_loc += qw * problem_->source(x);

                if (with_jacobian) {
                    const Vec3 dau = dr.dalpha_dp.apply(uh);
                    for (int j = 0; j < nf; ++j) {
                        const Vec3 aphi = dr.alpha.apply(phi[j]);
                        for (int i = 0; i < nf; ++i) uu_loc[i * nf + j] += qw * dot(aphi, phi[i]);
                    }
                    for (int i = 0; i < nf; ++i) up_loc[i] += qw * dot(dau, phi[i]);
                }
            }

            // The divergence of basis l integrates to its orientation sign, so
            // the pressure coupling against piecewise-constant pressure is exact.
            for (int l = 0; l < nf; ++l) {
                fu_loc[l] -= pc * g.orientation[l];
                fp_loc -= coeff[l] * g.orientation[l];
            }

            for (int i = 0; i < nf; ++i) sink.fu[dofs[i]] += fu_loc[i];
            sink.fp[cell] += fp_loc;
            if (with_jacobian) {
                const size_t cu = static_cast<size_t>(cell) * nf * nf;
                const size_t cp = static_cast<size_t>(cell) * nf;
                for (int i = 0; i < nf; ++i) {
                    for (int j = 0; j < nf; ++j) sink.uu[pos_uu_[cu + i * nf + j]] += uu_loc[i * nf + j];
                    sink.up[pos_up_[cp + i]] += up_loc[i] - g.orientation[i];
                    sink.pu[pos_pu_[cp + i]] += -static_cast<double>(g.orientation[i]);
                }
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("assembly failed in cell " + std::to_string(cell) + ": " +
                                     e.what());
        }
    }
}

void Assembler::cell_range_vms(int begin, int end, const double* u, const double* p,
                               bool with_jacobian, const Sink& sink) const {
    const Mesh& mesh = *problem_->mesh;
    const int dim = mesh.dim;
    const int nv = dim + 1;
    const int nu = nv * dim;
    const QuadratureRule& rule = *rule_;

    int udofs[12], pdofs[4];
    for (int cell = begin; cell < end; ++cell) {
        try {
            const CellGeometry& g = geometry_[cell];
            cell_dofs(mesh, u_dofs_, cell, udofs);
            cell_dofs(mesh, p_dofs_, cell, pdofs);

            double cu[12], cp[4];
            for (int l = 0; l < nu; ++l) cu[l] = u[udofs[l]];
            for (int m = 0; m < nv; ++m) cp[m] = p[pdofs[m]];

            // P1 gradients are cellwise constant.
            Vec3 gp;
            for (int m = 0; m < nv; ++m) gp += g.grad_bary[m] * cp[m];
            double divu = 0.0;
            for (int l = 0; l < nv; ++l)
                for (int k = 0; k < dim; ++k) divu += cu[l * dim + k] * g.grad_bary[l][k];

            double fu_loc[12] = {0};
            double fp_loc[4] = {0, 0, 0, 0};
            double uu_loc[144] = {0};
            double up_loc[48] = {0};
            double pu_loc[48] = {0};
            double pp_loc[16] = {0};

            const double scale = reference_scale(dim) * g.measure;
            for (int q = 0; q < rule.size(); ++q) {
                const auto& bary = rule.points[q];
                const Vec3 x = physical_point(g, bary);
                Vec3 uh;
                double ph = 0.0;
                for (int l = 0; l < nv; ++l) {
                    for (int k = 0; k < dim; ++k) uh[k] += bary[l] * cu[l * dim + k];
                    ph += bary[l] * cp[l];
                }

                const Drag dr = drag(problem_->viscosity, problem_->permeability, ph, x, dim);
                // The stabilization needs K / mu; a vanishing viscosity
                // overflows it even though the mass terms stay finite.
                for (int k = 0; k < dim; ++k)
                    if (!std::isfinite(dr.alpha_inv(k, k)))
                        throw std::runtime_error(
                            "inverse drag overflow (viscosity underflow) at p = " +
                            std::to_string(ph));
                const double qw = rule.weights[q] * scale;

                Vec3 load;
                if (problem_->body_force) load = problem_->body_force(x);
                const double f = problem_->source ? problem_->source(x) : 0.0;

                const Vec3 half_mom = (dr.alpha.apply(uh) - load - gp) * 0.5;
                for (int l = 0; l < nv; ++l)
                    for (int k = 0; k < dim; ++k)
                        fu_loc[l * dim + k] += qw * (half_mom[k] * bary[l] - ph * g.grad_bary[l][k]);

                const Vec3 stab = dr.alpha_inv.apply(gp - load);
                for (int m = 0; m < nv; ++m)
                    fp_loc[m] += qw * (bary[m] * (f - divu) - 0.5 * dot(g.grad_bary[m], uh) -
                                       0.5 * dot(g.grad_bary[m], stab));

                if (!with_jacobian) continue;

                const Vec3 dau = dr.dalpha_dp.apply(uh);
                // alpha^-2 (d alpha / d p) (grad p - rho b); the factors are
                // all multiples of K or its inverse, so the products commute.
                const Vec3 dstab = dr.alpha_inv.apply(dr.alpha_inv.apply(dr.dalpha_dp.apply(gp - load)));

                for (int l = 0; l < nv; ++l) {
                    for (int k = 0; k < dim; ++k) {
                        const int row = l * dim + k;
                        for (int l2 = 0; l2 < nv; ++l2) {
                            const double nn = 0.5 * qw * bary[l] * bary[l2];
                            for (int k2 = 0; k2 < dim; ++k2)
                                uu_loc[row * nu + l2 * dim + k2] += nn * dr.alpha(k, k2);
                        }
                        for (int m = 0; m < nv; ++m)
                            up_loc[row * nv + m] +=
                                qw * (0.5 * dau[k] * bary[l] * bary[m] - bary[m] * g.grad_bary[l][k] -
                                      0.5 * bary[l] * g.grad_bary[m][k]);
                    }
                }
                for (int m = 0; m < nv; ++m) {
                    for (int l2 = 0; l2 < nv; ++l2)
                        for (int k2 = 0; k2 < dim; ++k2)
                            pu_loc[m * nu + l2 * dim + k2] +=
                                qw * (-bary[m] * g.grad_bary[l2][k2] -
                                      0.5 * g.grad_bary[m][k2] * bary[l2]);
                    for (int m2 = 0; m2 < nv; ++m2)
                        pp_loc[m * nv + m2] +=
                            qw * (0.5 * bary[m2] * dot(dstab, g.grad_bary[m]) -
                                  0.5 * dot(g.grad_bary[m], dr.alpha_inv.apply(g.grad_bary[m2])));
                }
            }

            for (int l = 0; l < nu; ++l) sink.fu[udofs[l]] += fu_loc[l];
            for (int m = 0; m < nv; ++m) sink.fp[pdofs[m]] += fp_loc[m];
            if (with_jacobian) {
                const size_t base_uu = static_cast<size_t>(cell) * nu * nu;
                const size_t base_up = static_cast<size_t>(cell) * nu * nv;
                const size_t base_pp = static_cast<size_t>(cell) * nv * nv;
                for (int i = 0; i < nu * nu; ++i) sink.uu[pos_uu_[base_uu + i]] += uu_loc[i];
                for (int i = 0; i < nu * nv; ++i) {
                    sink.up[pos_up_[base_up + i]] += up_loc[i];
                    sink.pu[pos_pu_[base_up + i]] += pu_loc[i];
                }
                for (int i = 0; i < nv * nv; ++i) sink.pp[pos_pp_[base_pp + i]] += pp_loc[i];
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("assembly failed in cell " + std::to_string(cell) + ": " +
                                     e.what());
        }
    }
}

void Assembler::apply_constraints(const std::vector<double>& u, const std::vector<double>& p,
                                  BlockSystem& sys, bool with_jacobian) const {
    const auto constrain_rows = [with_jacobian](const DofMap& rows, const DofMap& cols,
                                                const std::vector<double>& state,
                                                std::vector<double>& f, SparseMatrix& diag_block,
                                                SparseMatrix& off_block) {
        for (int r = 0; r < rows.n_dofs; ++r) {
            if (rows.is_dirichlet[r]) f[r] = state[r] - rows.dirichlet_value[r];
            if (!with_jacobian) continue;
            const auto& dptr = diag_block.row_ptr();
            const auto& dcol = diag_block.col_idx();
            auto& dval = diag_block.values();
            const auto& optr = off_block.row_ptr();
            auto& oval = off_block.values();
            const auto& ocol = off_block.col_idx();
            if (rows.is_dirichlet[r]) {
                for (int k = dptr[r]; k < dptr[r + 1]; ++k) dval[k] = dcol[k] == r ? 1.0 : 0.0;
                for (int k = optr[r]; k < optr[r + 1]; ++k) oval[k] = 0.0;
            } else {
                for (int k = dptr[r]; k < dptr[r + 1]; ++k)
                    if (rows.is_dirichlet[dcol[k]]) dval[k] = 0.0;
                for (int k = optr[r]; k < optr[r + 1]; ++k)
                    if (cols.is_dirichlet[ocol[k]]) oval[k] = 0.0;
            }
        }
    };
    constrain_rows(u_dofs_, p_dofs_, u, sys.Fu, sys.Juu, sys.Jup);
    constrain_rows(p_dofs_, u_dofs_, p, sys.Fp, sys.Jpp, sys.Jpu);
}

void Assembler::assemble(const std::vector<double>& u, const std::vector<double>& p,
                         BlockSystem& sys, bool with_jacobian) {
    if (static_cast<int>(u.size()) != u_dofs_.n_dofs ||
        static_cast<int>(p.size()) != p_dofs_.n_dofs)
        throw std::invalid_argument("state dimensions do not match the dof maps");
    if (sys.Juu.nnz() != proto_uu_.nnz() || sys.n_u() != u_dofs_.n_dofs ||
        sys.n_p() != p_dofs_.n_dofs)
        throw std::invalid_argument("system was not created by make_system()");

    const auto t0 = std::chrono::steady_clock::now();

    std::fill(sys.Fu.begin(), sys.Fu.end(), 0.0);
    std::fill(sys.Fp.begin(), sys.Fp.end(), 0.0);
    if (with_jacobian) {
        sys.Juu.set_zero();
        sys.Jup.set_zero();
        sys.Jpu.set_zero();
        sys.Jpp.set_zero();
    }

    const Mesh& mesh = *problem_->mesh;
    const int n_cells = mesh.n_cells();
    int threads = n_threads_;
    if (threads > n_cells) threads = n_cells < 1 ? 1 : n_cells;

    const auto run = [&](const Sink& sink, int begin, int end) {
        if (formulation_ == Formulation::RT0)
            cell_range_rt0(begin, end, u.data(), p.data(), with_jacobian, sink);
        else
            cell_range_vms(begin, end, u.data(), p.data(), with_jacobian, sink);
    };

    if (threads == 1) {
        const Sink sink{sys.Juu.values().data(), sys.Jup.values().data(),
                        sys.Jpu.values().data(), sys.Jpp.values().data(),
                        sys.Fu.data(),           sys.Fp.data()};
        run(sink, 0, n_cells);
    } else {
        buffers_.resize(threads);
        for (auto& b : buffers_) {
            b.uu.assign(proto_uu_.nnz(), 0.0);
            b.up.assign(proto_up_.nnz(), 0.0);
            b.pu.assign(proto_pu_.nnz(), 0.0);
            b.pp.assign(proto_pp_.nnz(), 0.0);
            b.fu.assign(u_dofs_.n_dofs, 0.0);
            b.fp.assign(p_dofs_.n_dofs, 0.0);
        }
        parallel_chunks(n_cells, threads, [&](int begin, int end, int t) {
            Buffers& b = buffers_[t];
            const Sink sink{b.uu.data(), b.up.data(), b.pu.data(),
                            b.pp.data(), b.fu.data(), b.fp.data()};
            run(sink, begin, end);
        });
        // Merging in thread order keeps per-entry sums in ascending cell order,
        // the same order the serial path uses.
        const auto merge = [](std::vector<double>& dst, const std::vector<double>& src) {
            for (size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
        };
        for (int t = 0; t < threads; ++t) {
            merge(sys.Juu.values(), buffers_[t].uu);
            merge(sys.Jup.values(), buffers_[t].up);
            merge(sys.Jpu.values(), buffers_[t].pu);
            merge(sys.Jpp.values(), buffers_[t].pp);
            merge(sys.Fu, buffers_[t].fu);
            merge(sys.Fp, buffers_[t].fp);
        }
    }

    for (size_t k = 0; k < boundary_fu_.size(); ++k) sys.Fu[k] += boundary_fu_[k];

    apply_constraints(u, p, sys, with_jacobian);

    const auto t1 = std::chrono::steady_clock::now();
    last_seconds_ = std::chrono::duration<double>(t1 - t0).count();
    total_seconds_ += last_seconds_;
}

void Assembler::project_dirichlet(std::vector<double>& u, std::vector<double>& p) const {
    for (int i = 0; i < u_dofs_.n_dofs; ++i)
        if (u_dofs_.is_dirichlet[i]) u[i] = u_dofs_.dirichlet_value[i];
    for (int i = 0; i < p_dofs_.n_dofs; ++i)
        if (p_dofs_.is_dirichlet[i]) p[i] = p_dofs_.dirichlet_value[i];
}

BlockSystem assemble_rt0(const ProblemSpec& problem, const FieldSolution& state) {
    Assembler a(problem, Formulation::RT0);
    BlockSystem sys = a.make_system();
    a.assemble(state.u, state.p, sys);
    return sys;
}

BlockSystem assemble_vms(const ProblemSpec& problem, const FieldSolution& state) {
    Assembler a(problem, Formulation::VMS);
    BlockSystem sys = a.make_system();
    a.assemble(state.u, state.p, sys);
    return sys;
}

L2Errors l2_errors(const ProblemSpec& problem, const FieldSolution& solution) {
    if (!problem.exact_velocity || !problem.exact_pressure)
        throw std::invalid_argument("problem carries no exact solution");
    const Mesh& mesh = *problem.mesh;
    const DofMap udofs = make_dofmap(
        mesh, solution.formulation == Formulation::RT0 ? SpaceKind::RT0Flux
                                                       : SpaceKind::P1VectorVelocity);
    const QuadratureRule& rule = simplex_quadrature(mesh.dim, 5);

    int dofs[12];
    Vec3 phi[4];
    double div[4];
    double eu = 0.0, ep = 0.0;
    for (int cell = 0; cell < mesh.n_cells(); ++cell) {
        const CellGeometry g = cell_geometry(mesh, cell);
        const int n = cell_dofs(mesh, udofs, cell, dofs);
        const double scale = reference_scale(mesh.dim) * g.measure;
        for (int q = 0; q < rule.size(); ++q) {
            const auto& bary = rule.points[q];
            const Vec3 x = physical_point(g, bary);
            Vec3 uh;
            double ph = 0.0;
            if (solution.formulation == Formulation::RT0) {
                eval_rt0_basis(g, x, phi, div);
                for (int l = 0; l < n; ++l) uh += phi[l] * solution.u[dofs[l]];
                ph = solution.p[cell];
            } else {
                for (int l = 0; l <= mesh.dim; ++l) {
                    for (int k = 0; k < mesh.dim; ++k)
                        uh[k] += bary[l] * solution.u[dofs[l * mesh.dim + k]];
                    ph += bary[l] * solution.p[mesh.cells[cell][l]];
                }
            }
            const Vec3 du = uh - problem.exact_velocity(x);
            const double dp = ph - problem.exact_pressure(x);
            const double qw = rule.weights[q] * scale;
            eu += qw * dot(du, du);
            ep += qw * dp * dp;
        }
    }
    return {std::sqrt(eu), std::sqrt(ep)};
}

}  // namespace vidarcy
