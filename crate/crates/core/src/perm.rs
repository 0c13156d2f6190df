use std::fmt;

use crate::IetError;

/// A permutation of `{0, .., n-1}`, stored as its images.
///
/// Text and file formats use 1-based images, `π(1) .. π(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, IetError> {
        let n = images.len();
        if n == 0 {
            return Err(IetError::Empty);
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(IetError::NotBijective {
                    n,
                    images: images.iter().map(|i| i + 1).collect(),
                });
            }
        }
        Ok(Permutation { images })
    }

    /// From 1-based images, as written in files.
    pub fn from_one_based(images: &[usize]) -> Result<Self, IetError> {
        let n = images.len();
        let zero_based = images
            .iter()
            .map(|&i| i.checked_sub(1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| IetError::NotBijective {
                n,
                images: images.to_vec(),
            })?;
        Self::from_images(zero_based).map_err(|e| match e {
            IetError::NotBijective { n, .. } => IetError::NotBijective {
                n,
                images: images.to_vec(),
            },
            e => e,
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// First position `j` (0-based) with `π(j+1) = π(j) + 1`, if any.
    pub fn partition_point(&self) -> Option<usize> {
        self.images.windows(2).position(|w| w[1] == w[0] + 1)
    }

    pub fn is_unpartitioned(&self) -> bool {
        self.partition_point().is_none()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_based(&[1, 1]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[1, 3]).is_err());
        assert_eq!(Permutation::from_one_based(&[]), Err(IetError::Empty));
    }

    #[test]
    fn unpartitioned_predicate() {
        let p = |v: &[usize]| Permutation::from_one_based(v).unwrap();
        assert!(p(&[3, 2, 1, 4]).is_unpartitioned());
        assert!(p(&[2, 1, 4, 3, 5]).is_unpartitioned());
        assert!(p(&[1]).is_unpartitioned());
        assert_eq!(p(&[3, 4, 1, 2]).partition_point(), Some(0));
        assert_eq!(p(&[1, 2]).partition_point(), Some(0));
    }

    #[test]
    fn inverse_and_display() {
        let p = Permutation::from_one_based(&[3, 1, 2]).unwrap();
        assert_eq!(p.inverse().one_based(), vec![2, 3, 1]);
        assert_eq!(p.to_string(), "3 1 2");
    }
}
