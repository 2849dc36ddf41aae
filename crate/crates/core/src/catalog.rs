//! Constructors for the example actions, with known relational complexity.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

/// What is known about the relational complexity of an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedRc {
    Exact(usize),
    AtMost(usize),
}

impl ExpectedRc {
    pub fn exact(self) -> Option<usize> {
        match self {
            ExpectedRc::Exact(v) => Some(v),
            ExpectedRc::AtMost(_) => None,
        }
    }

    pub fn admits(self, rc: usize) -> bool {
        match self {
            ExpectedRc::Exact(v) => rc == v,
            ExpectedRc::AtMost(v) => rc <= v,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub parameters: Vec<String>,
    pub group: PermutationGroup,
    pub expected_rc: Option<ExpectedRc>,
    /// Where the expected value comes from.
    pub rc_source: Option<&'static str>,
    pub expected_primitive: Option<bool>,
    /// Member of the Sym(m) wr Sym(r) product-action family.
    pub in_product_family: bool,
}

impl CatalogEntry {
    fn new(name: &str, parameters: Vec<String>, group: PermutationGroup) -> Self {
        CatalogEntry {
            name: name.to_string(),
            parameters,
            group,
            expected_rc: None,
            rc_source: None,
            expected_primitive: None,
            in_product_family: false,
        }
    }

    fn rc(mut self, rc: ExpectedRc, source: &'static str) -> Self {
        self.expected_rc = Some(rc);
        self.rc_source = Some(source);
        self
    }

    fn primitive(mut self, p: bool) -> Self {
        self.expected_primitive = Some(p);
        self
    }

    /// Display label such as `ksubsets(alt,7,3)`.
    pub fn label(&self) -> String {
        format!("{}({})", self.name, self.parameters.join(","))
    }
}

/// Base group of a derived action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Sym,
    Alt,
}

impl Base {
    fn group(self, n: usize) -> PermutationGroup {
        match self {
            Base::Sym => PermutationGroup::symmetric(n),
            Base::Alt => PermutationGroup::alternating(n),
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Base::Sym => "sym",
            Base::Alt => "alt",
        }
    }
}

/// Permutation group induced by `gens` on a list of objects closed under
/// `act`. Objects keep their list order as point labels.
pub fn action_on<T, F>(objects: &[T], gens: &[Permutation], act: F) -> Result<PermutationGroup>
where
    T: Eq + Hash + Clone,
    F: Fn(&Permutation, &T) -> T,
{
    let index: HashMap<&T, usize> = objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let mut out = Vec::new();
    for g in gens {
        let images = objects
            .iter()
            .map(|o| {
                index
                    .get(&act(g, o))
                    .copied()
                    .ok_or_else(|| Error::ConditionFailed("object set not invariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Permutation::from_images(images)?;
        if !p.is_identity() && !out.contains(&p) {
            out.push(p);
        }
    }
    PermutationGroup::new(objects.len(), out)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn floor_log2(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

pub fn symmetric_natural(n: usize) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    Ok(
        CatalogEntry::new("sym", vec![n.to_string()], PermutationGroup::symmetric(n))
            .rc(ExpectedRc::Exact(2), "symmetric group: complete digraph")
            .primitive(true),
    )
}

pub fn alternating_natural(n: usize) -> Result<CatalogEntry> {
    if n < 3 {
        return Err(Error::BadParameter("n must be at least 3".into()));
    }
    Ok(
        CatalogEntry::new("alt", vec![n.to_string()], PermutationGroup::alternating(n))
            .rc(ExpectedRc::Exact(n - 1), "alternating group: t - 1")
            .primitive(true),
    )
}

pub fn cyclic_regular(n: usize) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::BadParameter("n must be at least 2".into()));
    }
    Ok(
        CatalogEntry::new("cyclic", vec![n.to_string()], PermutationGroup::cyclic(n))
            .rc(ExpectedRc::Exact(2), "regular action")
            .primitive(is_prime(n as u64)),
    )
}

/// Dihedral group of order `2n` on the vertices of an `n`-gon.
pub fn dihedral_polygon(n: usize) -> Result<CatalogEntry> {
    if n < 3 {
        return Err(Error::BadParameter("n must be at least 3".into()));
    }
    let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
    let g = PermutationGroup::new(n, vec![rot, refl])?;
    let mut e = CatalogEntry::new("dihedral", vec![n.to_string()], g).primitive(is_prime(n as u64));
    if n % 2 == 1 && is_prime(n as u64) {
        e = e.rc(ExpectedRc::Exact(2), "point stabilizer of order 2 with regular normal subgroup");
    }
    Ok(e)
}

/// All `k`-subsets of `0..n`, sorted, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::relcomp::subsets(n, k)
}

pub fn k_subsets_action(base: Base, n: usize, k: usize) -> Result<CatalogEntry> {
    if k == 0 || 2 * k > n {
        return Err(Error::BadParameter(format!("need 1 <= k and 2k <= n, got n={n}, k={k}")));
    }
    if base == Base::Alt && n < 3 {
        return Err(Error::BadParameter("alternating base needs n >= 3".into()));
    }
    let objects = k_subsets(n, k);
    let gens = base.group(n).generators().to_vec();
    let g = action_on(&objects, &gens, |p, s| {
        let mut t: Vec<usize> = s.iter().map(|&x| p.apply(x)).collect();
        t.sort_unstable();
        t
    })?;
    let rc = match base {
        Base::Sym => 2 + floor_log2(k),
        Base::Alt => match k {
            1 => n - 1,
            2 => (n - 2).max(3),
            _ if n == 2 * k + 2 => n - 2,
            _ => n - 3,
        },
    };
    let params = vec![base.tag().to_string(), n.to_string(), k.to_string()];
    Ok(CatalogEntry::new("ksubsets", params, g)
        .rc(ExpectedRc::Exact(rc), "k-subsets formula")
        .primitive(2 * k < n))
}

/// Perfect matchings of `0..2n` as sorted lists of sorted pairs.
pub fn perfect_matchings(points: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = free.remove(0);
        for idx in 0..free.len() {
            let b = free.remove(idx);
            cur.push((a, b));
            rec(free, cur, out);
            cur.pop();
            free.insert(idx, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    rec(&mut (0..points).collect(), &mut Vec::new(), &mut out);
    out
}

/// Action on the perfect matchings of `2n` points.
pub fn matchings_action(base: Base, points: usize) -> Result<CatalogEntry> {
    if points < 4 || points % 2 == 1 {
        return Err(Error::BadParameter("need an even number of points, at least 4".into()));
    }
    let n = points / 2;
    let objects = perfect_matchings(points);
    let gens = base.group(points).generators().to_vec();
    let g = action_on(&objects, &gens, |p, m| {
        let mut t: Vec<(usize, usize)> = m
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (p.apply(a), p.apply(b));
                (x.min(y), x.max(y))
            })
            .collect();
        t.sort_unstable();
        t
    })?;
    let rc = match base {
        Base::Sym => n,
        Base::Alt => match n {
            2 => 2,
            3 | 4 => 4,
            _ if matches!(n % 6, 0 | 1 | 3 | 5) => n,
            _ => n - 1,
        },
    };
    let params = vec![base.tag().to_string(), points.to_string()];
    Ok(CatalogEntry::new("matchings", params, g)
        .rc(ExpectedRc::Exact(rc), "perfect matchings formula")
        .primitive(true))
}

/// `Sym(m) wr Sym(r)` in product action on `m^r` tuples.
///
/// Tuple `(a_0, .., a_{r-1})` is point `a_0 m^{r-1} + .. + a_{r-1}`.
pub fn product_action(m: usize, r: usize) -> Result<CatalogEntry> {
    if m < 2 || r < 2 {
        return Err(Error::BadParameter("need m >= 2 and r >= 2".into()));
    }
    let degree = (m as u64).checked_pow(r as u32).filter(|&d| d <= 10_000);
    let Some(degree) = degree else {
        return Err(Error::DegreeTooLarge {
            degree: usize::MAX,
            cap: 10_000,
        });
    };
    let degree = degree as usize;
    let decode = |mut x: usize| {
        let mut t = vec![0; r];
        for c in (0..r).rev() {
            t[c] = x % m;
            x /= m;
        }
        t
    };
    let encode = |t: &[usize]| t.iter().fold(0, |acc, &a| acc * m + a);
    let mut gens = Vec::new();
    for s in PermutationGroup::symmetric(m).generators() {
        gens.push(Permutation::from_images(
            (0..degree)
                .map(|x| {
                    let mut t = decode(x);
                    t[0] = s.apply(t[0]);
                    encode(&t)
                })
                .collect(),
        )?);
    }
    for s in PermutationGroup::symmetric(r).generators() {
        gens.push(Permutation::from_images(
            (0..degree)
                .map(|x| {
                    let t = decode(x);
                    let mut u = vec![0; r];
                    for c in 0..r {
                        u[s.apply(c)] = t[c];
                    }
                    encode(&u)
                })
                .collect(),
        )?);
    }
    let g = PermutationGroup::new(degree, gens)?;
    let rc = if m == 2 {
        ExpectedRc::Exact(2 + floor_log2(r))
    } else {
        ExpectedRc::AtMost(m + floor_log2(r))
    };
    let mut e = CatalogEntry::new("product", vec![m.to_string(), r.to_string()], g)
        .rc(rc, "product action formula")
        .primitive(m >= 3);
    e.in_product_family = true;
    Ok(e)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Least primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&f| mod_pow(g, (p - 1) / f, p) != 1))
        .expect("prime modulus")
}

/// Lex-least `(b, c)` with `x^2 + b x + c` irreducible over `F_q`.
pub fn anisotropic_form(q: u64) -> Result<(u64, u64)> {
    for b in 0..q {
        for c in 0..q {
            if (0..q).all(|x| (x * x + b * x + c) % q != 0) {
                return Ok((b, c));
            }
        }
    }
    Err(Error::NoAnisotropicForm(q))
}

/// Translations of `F_q^dim` extended by the isometries of an anisotropic
/// quadratic form.
pub fn affine_orthogonal(q: usize, dim: usize) -> Result<CatalogEntry> {
    let ok = match dim {
        1 => q <= 13 && q % 2 == 1 && is_prime(q as u64),
        2 => q <= 7 && q % 2 == 1 && is_prime(q as u64),
        _ => false,
    };
    if !ok {
        return Err(Error::BadParameter(format!(
            "affine orthogonal needs dim 1 with odd prime q <= 13 or dim 2 with odd prime q <= 7, got q={q}, dim={dim}"
        )));
    }
    let g = if dim == 1 {
        let shift = Permutation::from_images((0..q).map(|x| (x + 1) % q).collect())?;
        let neg = Permutation::from_images((0..q).map(|x| (q - x) % q).collect())?;
        PermutationGroup::new(q, vec![shift, neg])?
    } else {
        let qq = q as u64;
        let (b, c) = anisotropic_form(qq)?;
        let form = |x: u64, y: u64| (x * x + b * x * y + c * y * y) % qq;
        let degree = q * q;
        let mut gens = vec![
            Permutation::from_images((0..degree).map(|v| ((v / q + 1) % q) * q + v % q).collect())?,
            Permutation::from_images((0..degree).map(|v| (v / q) * q + (v % q + 1) % q).collect())?,
        ];
        for m in isometries(qq, &form) {
            let img = (0..degree)
                .map(|v| {
                    let (x, y) = ((v / q) as u64, (v % q) as u64);
                    let nx = (m[0] * x + m[1] * y) % qq;
                    let ny = (m[2] * x + m[3] * y) % qq;
                    (nx * qq + ny) as usize
                })
                .collect();
            let p = Permutation::from_images(img)?;
            if !p.is_identity() {
                gens.push(p);
            }
        }
        PermutationGroup::new(degree, gens)?
    };
    Ok(
        CatalogEntry::new("affine-orthogonal", vec![q.to_string(), dim.to_string()], g)
            .rc(ExpectedRc::Exact(2), "affine orthogonal group of an anisotropic form")
            .primitive(true),
    )
}

/// All matrices `[a, b; c, d]` (row-major, acting on column vectors)
/// preserving `form`, by exhaustive search.
pub fn isometries(q: u64, form: &dyn Fn(u64, u64) -> u64) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if (a * d + q * q - b * c).is_multiple_of(q) {
                        continue;
                    }
                    let preserves = (0..q).all(|x| {
                        (0..q).all(|y| form((a * x + b * y) % q, (c * x + d * y) % q) == form(x, y))
                    });
                    if preserves {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// `AGL_1(q)`: maps `x -> a x + b` on `F_q`, for `q` a prime up to 31 or
/// `q ∈ {4, 8, 16}`.
pub fn agl1(q: usize) -> Result<CatalogEntry> {
    let gens = if is_prime(q as u64) && q <= 31 {
        let w = primitive_root(q as u64) as usize;
        vec![
            Permutation::from_images((0..q).map(|x| (x + 1) % q).collect())?,
            Permutation::from_images((0..q).map(|x| x * w % q).collect())?,
        ]
    } else {
        // elements of F_{2^k} as bit vectors, reduced by a primitive polynomial
        let (k, poly) = match q {
            4 => (2, 0b111),
            8 => (3, 0b1011),
            16 => (4, 0b10011),
            _ => return Err(Error::BadParameter(format!("agl1 needs a prime q <= 31 or q in {{4, 8, 16}}, got {q}"))),
        };
        let times_x = |v: usize| {
            let w = v << 1;
            if w & (1 << k) != 0 {
                w ^ poly
            } else {
                w
            }
        };
        let mut gens = vec![Permutation::from_images((0..q).map(times_x).collect())?];
        for i in 0..k {
            gens.push(Permutation::from_images((0..q).map(|x| x ^ (1 << i)).collect())?);
        }
        gens
    };
    let g = PermutationGroup::new(q, gens)?;
    Ok(CatalogEntry::new("agl1", vec![q.to_string()], g).primitive(true))
}

/// `Sym(m) wr Sym(k)` on `m k` points, preserving the blocks
/// `{b m, …, b m + m - 1}`.
pub fn imprimitive_wreath(m: usize, k: usize) -> Result<CatalogEntry> {
    if m < 2 || k < 2 || m * k > 64 {
        return Err(Error::BadParameter(format!("wreath needs m, k >= 2 and m k <= 64, got {m}, {k}")));
    }
    let n = m * k;
    let mut gens = Vec::new();
    for s in PermutationGroup::symmetric(m).generators() {
        gens.push(Permutation::from_images(
            (0..n).map(|x| if x < m { s.apply(x) } else { x }).collect(),
        )?);
    }
    for s in PermutationGroup::symmetric(k).generators() {
        gens.push(Permutation::from_images((0..n).map(|x| s.apply(x / m) * m + x % m).collect())?);
    }
    let g = PermutationGroup::new(n, gens)?;
    Ok(CatalogEntry::new("wreath", vec![m.to_string(), k.to_string()], g)
        .rc(ExpectedRc::Exact(2), "automorphism group of an equivalence relation"))
}

/// `PSL_2(p)` on the projective line, point `p` standing for infinity.
pub fn psl2_projective(p: usize) -> Result<CatalogEntry> {
    if !is_prime(p as u64) || p == 2 || p > 31 {
        return Err(Error::BadParameter(format!("psl2 needs an odd prime p <= 31, got {p}")));
    }
    let inf = p;
    let shift = Permutation::from_images((0..=p).map(|x| if x == inf { inf } else { (x + 1) % p }).collect())?;
    let invert = Permutation::from_images(
        (0..=p)
            .map(|x| match x {
                _ if x == inf => 0,
                0 => inf,
                _ => (p - mod_inv(x as u64, p as u64) as usize) % p,
            })
            .collect(),
    )?;
    let g = PermutationGroup::new(p + 1, vec![shift, invert])?;
    Ok(CatalogEntry::new("psl2", vec![p.to_string()], g).primitive(true))
}

/// The elements of `t`, sorted, so the identity comes first.
pub fn group_elements_sorted(t: &PermutationGroup) -> Vec<Permutation> {
    let mut els = t.elements();
    els.sort();
    els
}

/// Action on the elements of `T` generated by right translations,
/// conjugations and inversion. Point 0 is the identity of `T`.
pub fn diagonal_type_on_t(t: &PermutationGroup) -> Result<CatalogEntry> {
    if t.is_abelian() {
        return Err(Error::AbelianInput);
    }
    if t.order() > BigUint::from(360u32) {
        return Err(Error::TooLarge(format!("|T| = {} exceeds 360", t.order())));
    }
    let els = group_elements_sorted(t);
    let mut maps: Vec<Box<dyn Fn(&Permutation) -> Permutation>> = Vec::new();
    for s in t.generators() {
        let s1 = s.clone();
        maps.push(Box::new(move |x: &Permutation| x.then(&s1)));
        let s2 = s.clone();
        maps.push(Box::new(move |x: &Permutation| x.conjugate_by(&s2)));
    }
    maps.push(Box::new(|x: &Permutation| x.inverse()));
    let index: HashMap<&Permutation, usize> = els.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut gens = Vec::new();
    for f in &maps {
        let p = Permutation::from_images(els.iter().map(|x| index[&f(x)]).collect())?;
        if !p.is_identity() && !gens.contains(&p) {
            gens.push(p);
        }
    }
    let g = PermutationGroup::new(els.len(), gens)?;
    Ok(CatalogEntry::new("diagonal", vec![format!("order{}", els.len())], g))
}

/// `Sym(n)` on `n + 2` points: naturally on the first `n`, through the sign
/// on the last two.
pub fn intransitive_join(n: usize) -> Result<CatalogEntry> {
    if !(3..=7).contains(&n) {
        return Err(Error::BadParameter(format!("intransitive join needs 3 <= n <= 7, got {n}")));
    }
    let sign_swap = |p: &Permutation| -> Result<Permutation> {
        let odd = p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
        let mut img: Vec<usize> = p.to_images();
        img.extend(if odd { [n + 1, n] } else { [n, n + 1] });
        Permutation::from_images(img)
    };
    let gens = PermutationGroup::symmetric(n)
        .generators()
        .iter()
        .map(sign_swap)
        .collect::<Result<Vec<_>>>()?;
    let g = PermutationGroup::new(n + 2, gens)?;
    Ok(CatalogEntry::new("intransitive", vec![n.to_string()], g)
        .rc(ExpectedRc::Exact(n), "natural action joined with the sign orbit"))
}

/// Builds an entry by name and string parameters, as used on the command line.
pub fn build(name: &str, params: &[String]) -> Result<CatalogEntry> {
    let int = |i: usize| -> Result<usize> {
        params
            .get(i)
            .ok_or_else(|| Error::BadParameter(format!("{name}: missing parameter {}", i + 1)))?
            .parse()
            .map_err(|_| Error::BadParameter(format!("{name}: parameter {} must be an integer", i + 1)))
    };
    let base = |i: usize| -> Result<Base> {
        match params.get(i).map(String::as_str) {
            Some("sym") => Ok(Base::Sym),
            Some("alt") => Ok(Base::Alt),
            _ => Err(Error::BadParameter(format!("{name}: parameter {} must be sym or alt", i + 1))),
        }
    };
    match name {
        "sym" => symmetric_natural(int(0)?),
        "alt" => alternating_natural(int(0)?),
        "cyclic" => cyclic_regular(int(0)?),
        "dihedral" => dihedral_polygon(int(0)?),
        "ksubsets" => k_subsets_action(base(0)?, int(1)?, int(2)?),
        "matchings" => matchings_action(base(0)?, int(1)?),
        "product" => product_action(int(0)?, int(1)?),
        "affine-orthogonal" => affine_orthogonal(int(0)?, int(1)?),
        "agl1" => agl1(int(0)?),
        "psl2" => psl2_projective(int(0)?),
        "diagonal" => {
            let t = match params.first().map(String::as_str) {
                Some("sym3") => PermutationGroup::symmetric(3),
                Some("alt4") => PermutationGroup::alternating(4),
                Some("sym4") => PermutationGroup::symmetric(4),
                Some("alt5") => PermutationGroup::alternating(5),
                _ => return Err(Error::BadParameter("diagonal: T must be sym3, alt4, sym4 or alt5".into())),
            };
            let mut e = diagonal_type_on_t(&t)?;
            e.parameters = vec![params[0].clone()];
            Ok(e)
        }
        "intransitive" => intransitive_join(int(0)?),
        "wreath" => imprimitive_wreath(int(0)?, int(1)?),
        _ => Err(Error::BadParameter(format!("unknown catalog entry {name}"))),
    }
}

/// Names with parameter schemas.
pub fn schemas() -> Vec<(&'static str, &'static str)> {
    vec![
        ("sym", "<n>"),
        ("alt", "<n>"),
        ("cyclic", "<n>"),
        ("dihedral", "<n>"),
        ("ksubsets", "<sym|alt> <n> <k>"),
        ("matchings", "<sym|alt> <2n>"),
        ("product", "<m> <r>"),
        ("affine-orthogonal", "<q> <dim>"),
        ("agl1", "<q>"),
        ("psl2", "<p>"),
        ("diagonal", "<sym3|alt4|sym4|alt5>"),
        ("intransitive", "<n>"),
        ("wreath", "<m> <k>"),
    ]
}

/// The standard catalog used by the acceptance suite.
pub fn standard_entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut push = |e: Result<CatalogEntry>| out.push(e.expect("catalog parameters are valid"));
    for n in 2..=8 {
        push(symmetric_natural(n));
    }
    for n in 3..=7 {
        push(alternating_natural(n));
    }
    for n in [2, 3, 4, 5, 6, 7, 11, 13] {
        push(cyclic_regular(n));
    }
    for n in [4, 5, 6, 7, 11] {
        push(dihedral_polygon(n));
    }
    for (b, n, k) in [
        (Base::Sym, 4, 2),
        (Base::Sym, 5, 2),
        (Base::Sym, 6, 2),
        (Base::Sym, 8, 4),
        (Base::Alt, 5, 2),
        (Base::Alt, 6, 2),
        (Base::Alt, 7, 3),
    ] {
        push(k_subsets_action(b, n, k));
    }
    for (b, pts) in [(Base::Sym, 4), (Base::Alt, 4), (Base::Sym, 6), (Base::Alt, 6)] {
        push(matchings_action(b, pts));
    }
    for (m, r) in [(2, 2), (2, 3), (2, 4), (3, 2)] {
        push(product_action(m, r));
    }
    for (q, d) in [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (3, 2), (5, 2), (7, 2)] {
        push(affine_orthogonal(q, d));
    }
    for q in [3, 5, 7, 8, 11] {
        push(agl1(q));
    }
    for p in [5, 7, 11, 13] {
        push(psl2_projective(p));
    }
    push(build("diagonal", &["sym3".to_string()]));
    push(build("diagonal", &["alt4".to_string()]));
    push(build("diagonal", &["alt5".to_string()]));
    for n in 3..=7 {
        push(intransitive_join(n));
    }
    for (m, k) in [(2, 3), (3, 2), (3, 3)] {
        push(imprimitive_wreath(m, k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(e: &CatalogEntry) -> u64 {
        order_of(&e.group)
    }

    fn order_of(g: &PermutationGroup) -> u64 {
        g.order_u128().unwrap() as u64
    }

    #[test]
    fn natural_orders() {
        let e = symmetric_natural(5).unwrap();
        assert_eq!((order(&e), e.expected_rc), (120, Some(ExpectedRc::Exact(2))));
        assert_eq!(alternating_natural(6).unwrap().expected_rc, Some(ExpectedRc::Exact(5)));
        let d = dihedral_polygon(7).unwrap();
        assert_eq!((order(&d), d.expected_rc), (14, Some(ExpectedRc::Exact(2))));
    }

    #[test]
    fn subsets_and_matchings() {
        let e = k_subsets_action(Base::Sym, 6, 2).unwrap();
        assert_eq!((e.group.degree(), e.expected_rc), (15, Some(ExpectedRc::Exact(3))));
        let e = k_subsets_action(Base::Alt, 5, 2).unwrap();
        assert_eq!((e.group.degree(), e.expected_rc), (10, Some(ExpectedRc::Exact(3))));
        let e = k_subsets_action(Base::Alt, 7, 3).unwrap();
        assert_eq!((e.group.degree(), e.expected_rc), (35, Some(ExpectedRc::Exact(4))));
        assert_eq!(order(&k_subsets_action(Base::Sym, 8, 4).unwrap()), 40320);
        let m = matchings_action(Base::Sym, 4).unwrap();
        assert_eq!((m.group.degree(), order(&m)), (3, 6));
        let m = matchings_action(Base::Alt, 4).unwrap();
        assert_eq!((order(&m), m.expected_rc), (3, Some(ExpectedRc::Exact(2))));
        let m = matchings_action(Base::Alt, 6).unwrap();
        assert_eq!((m.group.degree(), order(&m), m.expected_rc), (15, 360, Some(ExpectedRc::Exact(4))));
        assert!(k_subsets_action(Base::Sym, 3, 2).is_err());
    }

    #[test]
    fn product_orders() {
        let e = product_action(2, 2).unwrap();
        assert_eq!((e.group.degree(), order(&e), e.expected_rc), (4, 8, Some(ExpectedRc::Exact(3))));
        let e = product_action(2, 4).unwrap();
        assert_eq!((e.group.degree(), order(&e), e.expected_rc), (16, 384, Some(ExpectedRc::Exact(4))));
        let e = product_action(3, 2).unwrap();
        assert_eq!((e.group.degree(), order(&e), e.expected_rc), (9, 72, Some(ExpectedRc::AtMost(4))));
    }

    #[test]
    fn affine_orthogonal_orders() {
        let e = affine_orthogonal(5, 1).unwrap();
        assert_eq!(order(&e), 10);
        let e = affine_orthogonal(3, 2).unwrap();
        assert_eq!((e.group.degree(), order(&e)), (9, 72));
        let e = affine_orthogonal(7, 2).unwrap();
        assert_eq!((e.group.degree(), order(&e)), (49, 49 * 16));
        assert!(affine_orthogonal(9, 2).is_err());
    }

    #[test]
    fn isometry_groups_have_order_twice_q_plus_one() {
        for q in [3u64, 5, 7] {
            let (b, c) = anisotropic_form(q).unwrap();
            let f = move |x: u64, y: u64| (x * x + b * x * y + c * y * y) % q;
            assert_eq!(isometries(q, &f).len() as u64, 2 * (q + 1));
        }
    }

    #[test]
    fn affine_and_projective_lines() {
        assert_eq!(order(&agl1(5).unwrap()), 20);
        for q in [4, 8, 16] {
            let g = agl1(q).unwrap().group;
            assert_eq!(order_of(&g), (q * (q - 1)) as u64);
            let stab = g.pointwise_stabilizer(&[0]).unwrap();
            assert_eq!(stab.orbits().len(), 2);
        }
        assert!(agl1(9).is_err());
        let w = imprimitive_wreath(3, 3).unwrap();
        assert_eq!((w.group.degree(), order(&w)), (9, 1296));
        assert!(!w.group.is_primitive().unwrap());
        let e = psl2_projective(7).unwrap();
        assert_eq!((e.group.degree(), order(&e)), (8, 168));
        let e = psl2_projective(5).unwrap();
        assert_eq!((e.group.degree(), order(&e)), (6, 60));
        assert!(e.group.is_transitive());
        let stab = e.group.pointwise_stabilizer(&[0]).unwrap();
        assert_eq!(stab.orbits().len(), 2);
    }

    #[test]
    fn diagonal_actions() {
        let e = diagonal_type_on_t(&PermutationGroup::symmetric(3)).unwrap();
        assert_eq!(e.group.degree(), 6);
        let stab = e.group.pointwise_stabilizer(&[0]).unwrap();
        assert!(stab.order() >= BigUint::from(6u32));
        assert_eq!(
            diagonal_type_on_t(&PermutationGroup::cyclic(4)).unwrap_err(),
            Error::AbelianInput
        );
        let e = diagonal_type_on_t(&PermutationGroup::alternating(5)).unwrap();
        assert_eq!(e.group.degree(), 60);
    }

    #[test]
    fn intransitive_orbits() {
        let e = intransitive_join(3).unwrap();
        assert_eq!(e.group.degree(), 5);
        let sizes: Vec<usize> = e.group.orbits().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 2]);
        assert_eq!(e.expected_rc, Some(ExpectedRc::Exact(3)));
        assert_eq!(order(&intransitive_join(4).unwrap()), 24);
    }

    #[test]
    fn build_by_name() {
        let e = build("ksubsets", &["alt".into(), "6".into(), "2".into()]).unwrap();
        assert_eq!(e.label(), "ksubsets(alt,6,2)");
        assert!(build("nope", &[]).is_err());
        assert!(build("sym", &["x".into()]).is_err());
    }
}
