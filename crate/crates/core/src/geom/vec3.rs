//! Three-vectors generic over the scalar kind.

use crate::ival::IvalError;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

pub type Vec3f = Vec3<f64>;

impl<T: Scalar> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3 { x, y, z }
    }

    pub fn from_f64s(v: [f64; 3]) -> Self {
        Vec3::new(T::from_f64(v[0]), T::from_f64(v[1]), T::from_f64(v[2]))
    }

    pub fn zero() -> Self {
        Vec3::new(T::from_f64(0.0), T::from_f64(0.0), T::from_f64(0.0))
    }

    pub fn add(&self, o: &Self) -> Result<Self, IvalError> {
        Ok(Vec3::new(self.x.add(&o.x)?, self.y.add(&o.y)?, self.z.add(&o.z)?))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, IvalError> {
        Ok(Vec3::new(self.x.sub(&o.x)?, self.y.sub(&o.y)?, self.z.sub(&o.z)?))
    }

    pub fn scale(&self, s: &T) -> Result<Self, IvalError> {
        Ok(Vec3::new(self.x.mul(s)?, self.y.mul(s)?, self.z.mul(s)?))
    }

    pub fn neg(&self) -> Self {
        Vec3::new(self.x.neg(), self.y.neg(), self.z.neg())
    }

    pub fn dot(&self, o: &Self) -> Result<T, IvalError> {
        self.x
            .mul(&o.x)?
            .add(&self.y.mul(&o.y)?)?
            .add(&self.z.mul(&o.z)?)
    }

    pub fn cross(&self, o: &Self) -> Result<Self, IvalError> {
        Ok(Vec3::new(
            self.y.mul(&o.z)?.sub(&self.z.mul(&o.y)?)?,
            self.z.mul(&o.x)?.sub(&self.x.mul(&o.z)?)?,
            self.x.mul(&o.y)?.sub(&self.y.mul(&o.x)?)?,
        ))
    }

    pub fn norm2(&self) -> Result<T, IvalError> {
        self.x.square()?.add(&self.y.square()?)?.add(&self.z.square()?)
    }

    pub fn norm(&self) -> Result<T, IvalError> {
        self.norm2()?.sqrt_clamped()
    }

    pub fn dist(&self, o: &Self) -> Result<T, IvalError> {
        self.sub(o)?.norm()
    }

    pub fn approx(&self) -> [f64; 3] {
        [self.x.approx(), self.y.approx(), self.z.approx()]
    }
}

impl Vec3<f64> {
    pub fn of(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }
}
