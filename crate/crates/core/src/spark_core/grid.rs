//! The nine-group diagram with exact rows and columns around the spark group.

use alloc::string::String;
use alloc::vec::Vec;

use crate::exact_linalg::{is_exact_at, AbelianInvariants, Hom, ModuleHom, QZModule, Subgroup};

use super::triple::SparkComplexTriple;

/// Node order: row-major, `[H(E)/H_I(E), spark_E, dE; H(G), spark, Z_I(E); Ker(I), H(I), H_I(E)]`.
pub const NODE_NAMES: [&str; 9] = [
    "H^k(E)/H^k_I(E)",
    "H^k_E spark",
    "dE^k",
    "H^k(G)",
    "H^k spark",
    "Z_I^{k+1}(E)",
    "Ker^{k+1}(I)",
    "H^{k+1}(I)",
    "H_I^{k+1}(E)",
];

#[derive(Clone, Debug)]
pub struct GridResult {
    pub degree: usize,
    pub nodes: Vec<QZModule>,
    pub invariants: Vec<AbelianInvariants>,
    /// `maps[(a, b)]` for the twelve arrows, `a -> b` in node indices.
    pub maps: Vec<(usize, usize, ModuleHom)>,
    pub maps_well_defined: bool,
    pub rows_exact: [bool; 3],
    pub cols_exact: [bool; 3],
    pub squares_commute: bool,
    /// `E^k / Z_I^k(E) -> spark_E` is an isomorphism.
    pub e_quotient_iso: bool,
}

impl GridResult {
    pub fn all_exact(&self) -> bool {
        self.maps_well_defined
            && self.rows_exact.iter().all(|&b| b)
            && self.cols_exact.iter().all(|&b| b)
            && self.squares_commute
            && self.e_quotient_iso
    }

    pub fn summary(&self) -> Vec<String> {
        NODE_NAMES.iter().zip(&self.invariants).map(|(n, i)| alloc::format!("{n} = {i}")).collect()
    }

    fn map(&self, a: usize, b: usize) -> &ModuleHom {
        &self.maps.iter().find(|(x, y, _)| (*x, *y) == (a, b)).expect("arrow exists").2
    }
}

fn short_exact(f: &ModuleHom, g: &ModuleHom) -> bool {
    f.is_injective() && is_exact_at(f, g) && g.is_surjective()
}

impl SparkComplexTriple {
    /// `Z_I^j(E)`: closed `e` whose image is cohomologous to `psi` of a closed integral cochain.
    pub fn z_i(&self, j: usize) -> Subgroup {
        let (f, i) = (self.f_group(), self.i_group());
        let t = i.cocycles(j).image(&self.psi_group().map(j)).sum(&f.coboundaries(j));
        Subgroup::full(self.e_group().ambient(j)).preimage(&self.incl_group().map(j), &t)
    }

    /// `e -> (incl e, 0)` from `E^k` into `G^k`.
    pub fn e_to_cone(&self, k: usize) -> Hom {
        self.cone().layout(k).inclusion(0).compose(&self.incl_group().map(k))
    }

    /// `E^k / Z_I^k(E)`.
    pub fn e_quotient(&self, k: usize) -> QZModule {
        QZModule::new(Subgroup::full(self.e_group().ambient(k)), self.z_i(k))
    }

    pub fn grid_3x3(&self, k: usize) -> GridResult {
        let (f, e, i) = (self.f_group(), self.e_group(), self.i_group());
        let bnd = self.cone().boundaries(k);
        let sparks = self.sparks(k);
        let g_amb = self.cone().ambient(k);
        let psi1 = self.psi_group().map(k + 1);

        let n1 = QZModule::new(e.cocycles(k), self.z_i(k));
        let n2 = QZModule::new(sparks.preimage(&self.delta2_hom(k), &i.coboundaries(k + 1)), bnd.clone());
        let n3 = QZModule::new(e.coboundaries(k + 1), Subgroup::zero(e.ambient(k + 1)));
        let n4 = self.cone().cohomology(k);
        let n5 = QZModule::new(sparks, bnd);
        let n6 = QZModule::new(self.z_i(k + 1), Subgroup::zero(e.ambient(k + 1)));
        let n7 = QZModule::new(i.cocycles(k + 1).preimage(&psi1, &f.coboundaries(k + 1)), i.coboundaries(k + 1));
        let n8 = i.cohomology(k + 1);
        let n9 = QZModule::new(i.cocycles(k + 1).image(&psi1).sum(&f.coboundaries(k + 1)), f.coboundaries(k + 1));
        let nodes = alloc::vec![n1, n2, n3, n4, n5, n6, n7, n8, n9];

        let j = self.e_to_cone(k);
        let d1 = self.delta1_hom(k);
        let d2 = self.delta2_hom(k);
        let id_g = Hom::identity(g_amb);
        let arrows: [(usize, usize, Hom); 12] = [
            (0, 1, j.clone()),
            (1, 2, d1.clone()),
            (3, 4, id_g.clone()),
            (4, 5, d1),
            (6, 7, Hom::identity(i.ambient(k + 1))),
            (7, 8, psi1),
            (0, 3, j),
            (3, 6, d2.clone()),
            (1, 4, id_g),
            (4, 7, d2),
            (2, 5, Hom::identity(e.ambient(k + 1))),
            (5, 8, self.incl_group().map(k + 1)),
        ];
        let maps: Vec<(usize, usize, ModuleHom)> =
            arrows.into_iter().map(|(a, b, h)| (a, b, ModuleHom::new(nodes[a].clone(), nodes[b].clone(), h))).collect();
        let invariants = nodes.iter().map(|n| n.invariants()).collect();
        let mut g = GridResult {
            degree: k,
            nodes,
            invariants,
            maps,
            maps_well_defined: false,
            rows_exact: [false; 3],
            cols_exact: [false; 3],
            squares_commute: false,
            e_quotient_iso: false,
        };
        g.maps_well_defined = g.maps.iter().all(|(_, _, m)| m.is_well_defined());
        for r in 0..3 {
            g.rows_exact[r] = short_exact(g.map(3 * r, 3 * r + 1), g.map(3 * r + 1, 3 * r + 2));
            g.cols_exact[r] = short_exact(g.map(r, r + 3), g.map(r + 3, r + 6));
        }
        let squares = [((0, 1), (1, 4), (0, 3), (3, 4)), ((1, 2), (2, 5), (1, 4), (4, 5)), ((3, 4), (4, 7), (3, 6), (6, 7)), ((4, 5), (5, 8), (4, 7), (7, 8))];
        g.squares_commute = squares.iter().all(|&((a, b), (c, d), (x, y), (u, v))| {
            g.map(c, d).compose(g.map(a, b)).agrees_with(&g.map(u, v).compose(g.map(x, y)))
        });
        g.e_quotient_iso = ModuleHom::new(self.e_quotient(k), g.nodes[1].clone(), self.e_to_cone(k)).is_isomorphism();
        g
    }
}
