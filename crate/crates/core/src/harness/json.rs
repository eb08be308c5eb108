//! JSON forms of the public data types. Scalars are always strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autos::{AffineData, EndoA, TameGen, TameWord};
use crate::hamflows::HamSpec;
use crate::nagao::{GammaElem, NagaoFactor, NagaoWord, PolyMat2};
use crate::pathalg::{Alphabet, Arrow, Letter, NcPoly, Necklace, Path};
use crate::reps::RepPoint;
use crate::{Mat, Poly, Scalar};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid value: {0}")]
    Invalid(String),
}

fn invalid(e: impl ToString) -> JsonError {
    JsonError::Invalid(e.to_string())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermDto {
    pub coeff: Scalar,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NecklaceDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<String>,
    pub terms: Vec<TermDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TameGenDto {
    Tri {
        f: NecklaceDto,
    },
    Optri {
        f: NecklaceDto,
    },
    Aff {
        #[serde(rename = "S")]
        s: Mat,
        t: [Scalar; 2],
        #[serde(rename = "T")]
        tm: Mat,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum HamSpecDto {
    J { k: usize, alpha: Mat },
    H { f: NecklaceDto },
    Hp { f: NecklaceDto },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointDto {
    pub n: usize,
    pub tau: Scalar,
    #[serde(rename = "A")]
    pub a: Mat,
    #[serde(rename = "B")]
    pub b: Mat,
    #[serde(rename = "X1")]
    pub x1: Mat,
    #[serde(rename = "X2")]
    pub x2: Mat,
    #[serde(rename = "Y1")]
    pub y1: Mat,
    #[serde(rename = "Y2")]
    pub y2: Mat,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum FactorDto {
    C {
        #[serde(rename = "M")]
        m: Mat,
    },
    B {
        #[serde(rename = "M")]
        m: PolyMat2<Scalar>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaDto {
    pub p: Poly,
    #[serde(rename = "M")]
    pub m: PolyMat2<Scalar>,
}

pub fn ncpoly_to_dto(p: &NcPoly<Scalar>) -> Vec<TermDto> {
    p.terms()
        .map(|(path, c)| TermDto {
            coeff: c.clone(),
            word: match path {
                Path::Trivial(_) => vec![path.to_string()],
                Path::Word(w) => w.iter().map(|a| a.name().to_string()).collect(),
            },
        })
        .collect()
}

pub fn ncpoly_from_dto(terms: &[TermDto]) -> Result<NcPoly<Scalar>, JsonError> {
    let mut out = NcPoly::zero();
    for t in terms {
        let path = match t.word.as_slice() {
            [e] if e == "e1" => Path::e1(),
            [e] if e == "e2" => Path::e2(),
            w => {
                let arrows = w.iter().map(|s| s.parse::<Arrow>()).collect::<Result<Vec<_>, _>>().map_err(invalid)?;
                Path::word(arrows).map_err(invalid)?
            }
        };
        out.add_term(path, t.coeff.clone());
    }
    Ok(out)
}

pub fn necklace_to_dto(f: &Necklace<Scalar>) -> NecklaceDto {
    NecklaceDto {
        alphabet: Some(f.alphabet().name().to_string()),
        terms: f
            .terms()
            .map(|(w, c)| TermDto { coeff: c.clone(), word: w.iter().map(|l| l.name().to_string()).collect() })
            .collect(),
    }
}

pub fn necklace_from_dto(d: &NecklaceDto) -> Result<Necklace<Scalar>, JsonError> {
    let mut words = Vec::new();
    for t in &d.terms {
        let w = t
            .word
            .iter()
            .map(|s| Letter::parse(s).ok_or_else(|| invalid(format!("unknown letter {s}"))))
            .collect::<Result<Vec<_>, _>>()?;
        words.push((t.coeff.clone(), w));
    }
    let alphabet = match &d.alphabet {
        Some(a) => Alphabet::parse(a).ok_or_else(|| invalid(format!("unknown alphabet {a}")))?,
        None => {
            let letters: Vec<Letter> = words.iter().flat_map(|(_, w)| w.iter().copied()).collect();
            if letters.iter().all(|l| !l.is_starred()) {
                Alphabet::Unstarred
            } else if letters.iter().all(|l| l.is_starred()) {
                Alphabet::Starred
            } else {
                Alphabet::Full
            }
        }
    };
    Necklace::from_terms(alphabet, words).map_err(invalid)
}

pub fn endo_to_json(phi: &EndoA<Scalar>) -> serde_json::Value {
    let map: BTreeMap<&str, Vec<TermDto>> = Arrow::ALL.iter().map(|a| (a.name(), ncpoly_to_dto(phi.image(*a)))).collect();
    serde_json::to_value(map).expect("serializable")
}

pub fn endo_from_json(text: &str) -> Result<EndoA<Scalar>, JsonError> {
    let map: BTreeMap<String, Vec<TermDto>> = serde_json::from_str(text)?;
    let mut phi = EndoA::identity();
    for (name, terms) in &map {
        let a: Arrow = name.parse().map_err(invalid)?;
        phi = phi.with_image(a, ncpoly_from_dto(terms)?);
    }
    Ok(phi)
}

pub fn tame_gen_to_dto(g: &TameGen<Scalar>) -> TameGenDto {
    match g {
        TameGen::Tri(f) => TameGenDto::Tri { f: necklace_to_dto(f) },
        TameGen::OpTri(f) => TameGenDto::Optri { f: necklace_to_dto(f) },
        TameGen::Aff(d) => TameGenDto::Aff { s: d.s.clone(), t: d.t.clone(), tm: d.tm.clone() },
    }
}

pub fn tame_gen_from_dto(d: &TameGenDto) -> Result<TameGen<Scalar>, JsonError> {
    Ok(match d {
        TameGenDto::Tri { f } => TameGen::Tri(necklace_from_dto(f)?),
        TameGenDto::Optri { f } => TameGen::OpTri(necklace_from_dto(f)?),
        TameGenDto::Aff { s, t, tm } => {
            TameGen::Aff(AffineData::new(s.clone(), t.clone(), tm.clone()).map_err(invalid)?)
        }
    })
}

pub fn tame_word_to_json(w: &[TameGen<Scalar>]) -> serde_json::Value {
    serde_json::to_value(w.iter().map(tame_gen_to_dto).collect::<Vec<_>>()).expect("serializable")
}

pub fn tame_word_from_json(text: &str) -> Result<TameWord<Scalar>, JsonError> {
    let dtos: Vec<TameGenDto> = serde_json::from_str(text)?;
    dtos.iter().map(tame_gen_from_dto).collect()
}

pub fn point_to_json(p: &RepPoint<Scalar>) -> serde_json::Value {
    let dto = PointDto {
        n: p.n,
        tau: p.tau.clone(),
        a: p.a.clone(),
        b: p.b.clone(),
        x1: p.x1.clone(),
        x2: p.x2.clone(),
        y1: p.y1.clone(),
        y2: p.y2.clone(),
    };
    serde_json::to_value(dto).expect("serializable")
}

pub fn point_from_json(text: &str) -> Result<RepPoint<Scalar>, JsonError> {
    let d: PointDto = serde_json::from_str(text)?;
    let p = RepPoint::new(d.tau, d.a, d.b, d.x1, d.x2, d.y1, d.y2).map_err(invalid)?;
    if p.n != d.n {
        return Err(invalid(format!("n = {} but matrices are {}×{}", d.n, p.n, p.n)));
    }
    Ok(p)
}

pub fn ham_from_json(text: &str) -> Result<HamSpec<Scalar>, JsonError> {
    let d: HamSpecDto = serde_json::from_str(text)?;
    let h = match d {
        HamSpecDto::J { k, alpha } => HamSpec::J { k, alpha },
        HamSpecDto::H { f } => HamSpec::H(necklace_from_dto(&f)?),
        HamSpecDto::Hp { f } => HamSpec::Hp(necklace_from_dto(&f)?),
    };
    h.validate().map_err(invalid)?;
    Ok(h)
}

pub fn ham_to_json(h: &HamSpec<Scalar>) -> serde_json::Value {
    let d = match h {
        HamSpec::J { k, alpha } => HamSpecDto::J { k: *k, alpha: alpha.clone() },
        HamSpec::H(f) => HamSpecDto::H { f: necklace_to_dto(f) },
        HamSpec::Hp(f) => HamSpecDto::Hp { f: necklace_to_dto(f) },
    };
    serde_json::to_value(d).expect("serializable")
}

pub fn polymat_from_json(text: &str) -> Result<PolyMat2<Scalar>, JsonError> {
    let m: PolyMat2<Scalar> = serde_json::from_str(text)?;
    if m.shape() != (2, 2) {
        return Err(invalid("expected a 2×2 matrix"));
    }
    Ok(m)
}

pub fn nagao_word_to_json(w: &NagaoWord<Scalar>) -> serde_json::Value {
    let dtos: Vec<FactorDto> = w
        .factors
        .iter()
        .map(|f| match f {
            NagaoFactor::C(m) => FactorDto::C { m: m.clone() },
            NagaoFactor::B(m) => FactorDto::B { m: m.clone() },
        })
        .collect();
    serde_json::to_value(dtos).expect("serializable")
}

pub fn nagao_word_from_json(text: &str) -> Result<NagaoWord<Scalar>, JsonError> {
    let dtos: Vec<FactorDto> = serde_json::from_str(text)?;
    let factors = dtos
        .into_iter()
        .map(|d| match d {
            FactorDto::C { m } => NagaoFactor::C(m),
            FactorDto::B { m } => NagaoFactor::B(m),
        })
        .collect();
    Ok(NagaoWord { factors })
}

pub fn gamma_to_json(g: &GammaElem<Scalar>) -> serde_json::Value {
    serde_json::to_value(GammaDto { p: g.p().clone(), m: g.m().clone() }).expect("serializable")
}

pub fn gamma_from_json(text: &str) -> Result<GammaElem<Scalar>, JsonError> {
    let d: GammaDto = serde_json::from_str(text)?;
    GammaElem::new(d.p, d.m).map_err(invalid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::{fourier, lambda_tri, necklace_of};
    use crate::harness::gen;
    use crate::nagao::nagao_decompose;

    #[test]
    fn ncpoly_round_trip() {
        let phi = lambda_tri(&necklace_of::<Scalar>(&[(2, "aab"), (-1, "b")])).unwrap();
        let text = endo_to_json(&phi).to_string();
        assert_eq!(endo_from_json(&text).unwrap(), phi);
        let id = endo_to_json(&fourier::<Scalar>());
        assert_eq!(id["a"][0]["coeff"], "-1");
        assert_eq!(id["a"][0]["word"][0], "a*");
    }

    #[test]
    fn trivial_path_terms() {
        let p = &NcPoly::<Scalar>::e1() + &NcPoly::arrow(Arrow::A);
        let back = ncpoly_from_dto(&ncpoly_to_dto(&p)).unwrap();
        assert_eq!(back, p);
        assert!(ncpoly_from_dto(&[TermDto { coeff: Scalar::from(1), word: vec!["x".into(), "x".into()] }]).is_err());
    }

    #[test]
    fn word_point_gamma_round_trips() {
        let mut rng = gen::trial_rng(1, 0);
        let w = gen::tame_word(&mut rng, 4, 3);
        assert_eq!(tame_word_from_json(&tame_word_to_json(&w).to_string()).unwrap(), w);
        let pt = gen::fiber_point(&mut rng, 3, &Scalar::from(2));
        assert_eq!(point_from_json(&point_to_json(&pt).to_string()).unwrap(), pt);
        let g = gen::gamma(&mut rng, 4, 3);
        assert_eq!(gamma_from_json(&gamma_to_json(&g).to_string()).unwrap(), g);
        let m = gen::polymat2(&mut rng, 6, 3);
        let nw = nagao_decompose(&m).unwrap();
        assert_eq!(nagao_word_from_json(&nagao_word_to_json(&nw).to_string()).unwrap(), nw);
    }

    #[test]
    fn hamspec_forms() {
        let h = ham_from_json(r#"{"kind":"H","f":{"terms":[{"coeff":"1","word":["a","b"]}]}}"#).unwrap();
        assert_eq!(h, HamSpec::H(necklace_of(&[(1, "ab")])));
        let j = ham_from_json(r#"{"kind":"J","k":2,"alpha":[["0","1"],["0","0"]]}"#).unwrap();
        assert_eq!(ham_from_json(&ham_to_json(&j).to_string()).unwrap(), j);
        assert!(ham_from_json(r#"{"kind":"Hp","f":{"terms":[{"coeff":"1","word":["a"]}]}}"#).is_err());
        assert!(ham_from_json(r#"{"kind":"J","k":1,"alpha":[[1.5]]}"#).is_err());
    }
}
