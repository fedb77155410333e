use super::classify::Excess;
use super::is_monotone;
use crate::error::Error;
use crate::matrix;
use crate::subspace::Subspace;

/// Grows a monotone subspace to a maximal monotone one.
///
/// Each round adjoins a point of `[φ ≤ c] \ L`: a direction where
/// `φ − c` is negative when one exists, otherwise the first kernel vector
/// of `φ − c` on `dom φ` (in the canonical basis of `dom φ`) outside `L`.
/// Such a point is monotonically related to `L`, so the span stays
/// monotone and the dimension grows by one. The loop stops when
/// `[φ ≤ c] = L`, which forces `dim = n`.
pub fn extend_maximal(l: &Subspace) -> Result<Subspace, Error> {
    if !is_monotone(l).monotone {
        return Err(Error::NotMonotone);
    }
    let mut current = l.clone();
    loop {
        let excess = Excess::new(&current);
        if let Some(d) = excess.negative_point() {
            current = current.with_vector(d);
            continue;
        }
        let next = matrix::nullspace_vectors(&excess.q)
            .into_iter()
            .map(|k| excess.dom.combine(&k))
            .find(|v| !current.contains_flat(v));
        match next {
            Some(v) => current = current.with_vector(v),
            None => return Ok(current),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linsub::classify;
    use crate::matrix::Mat;
    use crate::pairing::Point;

    fn check(l: &Subspace) -> Subspace {
        let m = extend_maximal(l).unwrap();
        assert!(l.is_subspace_of(&m));
        assert_eq!(m.dim(), l.n());
        assert!(classify(&m).maximal.holds);
        m
    }

    #[test]
    fn zero_extends_to_diagonal() {
        let m = check(&Subspace::zero(1));
        assert_eq!(m, Subspace::from_points(1, &[Point::from_i64(&[1], &[1])]).unwrap());
    }

    #[test]
    fn maximal_input_is_unchanged() {
        let l = Subspace::from_points(1, &[Point::from_i64(&[1], &[1])]).unwrap();
        assert_eq!(check(&l), l);
        let rot = Subspace::graph(&Mat::from_i64(2, 2, &[0, 1, -1, 0])).unwrap();
        assert_eq!(check(&rot), rot);
    }

    #[test]
    fn lines_in_the_plane() {
        check(&Subspace::from_points(2, &[Point::from_i64(&[1, 0], &[1, 0])]).unwrap());
        check(&Subspace::from_points(2, &[Point::from_i64(&[1, 0], &[0, 0])]).unwrap());
        check(&Subspace::from_points(2, &[Point::from_i64(&[1, 1], &[1, 1])]).unwrap());
        check(&Subspace::zero(3));
    }

    #[test]
    fn rejects_non_monotone() {
        assert_eq!(extend_maximal(&Subspace::whole(1)), Err(Error::NotMonotone));
    }
}
