//! Physical constants, unit conversion and particle kinematics.
//!
//! Everything inside the crate is computed in one internal system where
//! `hbar = 1`, the electron mass is `1` and the energy unit is `1 eV`. The
//! time and length units follow from those three choices:
//!
//! | quantity | internal unit                   | value                  |
//! |----------|---------------------------------|------------------------|
//! | energy   | 1 eV                            | 1 eV                   |
//! | time     | hbar / eV                       | 0.6582119569 fs        |
//! | length   | hbar c / sqrt(m_e c^2 · 1 eV)   | ≈ 0.276042 nm          |
//! | momentum | hbar / length unit              | ≈ 2.384458 eV·fs/nm    |
//! | mass     | m_e                             | 510998.9500 eV/c²      |
//!
//! User-facing values are always given in eV, fs and nm (or a scaled
//! variant such as meV, ns, µm) and converted at the boundary.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant, eV·fs.
pub const HBAR_EV_FS: f64 = 0.658_211_956_9;
/// Planck constant, eV·fs.
pub const PLANCK_EV_FS: f64 = 4.135_667_696;
/// Electron rest energy m_e c², eV.
pub const ELECTRON_MASS_EV: f64 = 510_998.950_0;
/// Speed of light, nm/fs.
pub const SPEED_OF_LIGHT_NM_FS: f64 = 299.792_458_0;

/// The pinned constants together with the derived internal units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitSystem {
    pub hbar_ev_fs: f64,
    pub planck_ev_fs: f64,
    pub speed_of_light_nm_fs: f64,
    pub electron_mass_ev: f64,
    /// Internal time unit in fs.
    pub time_unit_fs: f64,
    /// Internal length unit in nm.
    pub length_unit_nm: f64,
}

impl UnitSystem {
    pub fn standard() -> Self {
        let hbar_c = HBAR_EV_FS * SPEED_OF_LIGHT_NM_FS;
        UnitSystem {
            hbar_ev_fs: HBAR_EV_FS,
            planck_ev_fs: PLANCK_EV_FS,
            speed_of_light_nm_fs: SPEED_OF_LIGHT_NM_FS,
            electron_mass_ev: ELECTRON_MASS_EV,
            time_unit_fs: HBAR_EV_FS,
            length_unit_nm: hbar_c / ELECTRON_MASS_EV.sqrt(),
        }
    }

    /// Speed of light in internal velocity units.
    pub fn speed_of_light(&self) -> f64 {
        SPEED_OF_LIGHT_NM_FS * self.time_unit_fs / self.length_unit_nm
    }

    /// Rows of (name, value, unit) for provenance records.
    pub fn table(&self) -> Vec<(&'static str, f64, &'static str)> {
        vec![
            ("hbar", self.hbar_ev_fs, "eV*fs"),
            ("h", self.planck_ev_fs, "eV*fs"),
            ("c", self.speed_of_light_nm_fs, "nm/fs"),
            ("m_e c^2", self.electron_mass_ev, "eV"),
            ("time_unit", self.time_unit_fs, "fs"),
            ("length_unit", self.length_unit_nm, "nm"),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dimension {
    Energy,
    Time,
    Length,
    Momentum,
    Action,
    Velocity,
    Mass,
    Angle,
}

/// A concrete unit. `factor` converts a value in this unit to internal units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    MilliElectronVolt,
    ElectronVolt,
    KiloElectronVolt,
    Attosecond,
    Femtosecond,
    Picosecond,
    Nanosecond,
    Second,
    Picometre,
    Nanometre,
    Micrometre,
    Millimetre,
    Metre,
    /// eV·fs/nm
    MomentumEvFsPerNm,
    /// eV·fs
    ActionEvFs,
    /// nm/fs
    NanometrePerFemtosecond,
    ElectronMass,
    /// eV/c²
    MassEv,
    Radian,
    Milliradian,
}

const ALL_UNITS: [Unit; 20] = [
    Unit::MilliElectronVolt,
    Unit::ElectronVolt,
    Unit::KiloElectronVolt,
    Unit::Attosecond,
    Unit::Femtosecond,
    Unit::Picosecond,
    Unit::Nanosecond,
    Unit::Second,
    Unit::Picometre,
    Unit::Nanometre,
    Unit::Micrometre,
    Unit::Millimetre,
    Unit::Metre,
    Unit::MomentumEvFsPerNm,
    Unit::ActionEvFs,
    Unit::NanometrePerFemtosecond,
    Unit::ElectronMass,
    Unit::MassEv,
    Unit::Radian,
    Unit::Milliradian,
];

impl Unit {
    pub fn dimension(self) -> Dimension {
        use Unit::*;
        match self {
            MilliElectronVolt | ElectronVolt | KiloElectronVolt => Dimension::Energy,
            Attosecond | Femtosecond | Picosecond | Nanosecond | Second => Dimension::Time,
            Picometre | Nanometre | Micrometre | Millimetre | Metre => Dimension::Length,
            MomentumEvFsPerNm => Dimension::Momentum,
            ActionEvFs => Dimension::Action,
            NanometrePerFemtosecond => Dimension::Velocity,
            ElectronMass | MassEv => Dimension::Mass,
            Radian | Milliradian => Dimension::Angle,
        }
    }

    pub fn symbol(self) -> &'static str {
        use Unit::*;
        match self {
            MilliElectronVolt => "meV",
            ElectronVolt => "eV",
            KiloElectronVolt => "keV",
            Attosecond => "as",
            Femtosecond => "fs",
            Picosecond => "ps",
            Nanosecond => "ns",
            Second => "s",
            Picometre => "pm",
            Nanometre => "nm",
            Micrometre => "um",
            Millimetre => "mm",
            Metre => "m",
            MomentumEvFsPerNm => "eV*fs/nm",
            ActionEvFs => "eV*fs",
            NanometrePerFemtosecond => "nm/fs",
            ElectronMass => "me",
            MassEv => "eV/c2",
            Radian => "rad",
            Milliradian => "mrad",
        }
    }

    fn aliases(self) -> &'static [&'static str] {
        match self {
            Unit::Micrometre => &["µm", "μm"],
            Unit::MomentumEvFsPerNm => &["eV.fs/nm", "eVfs/nm"],
            Unit::ActionEvFs => &["eV.fs", "eVfs"],
            Unit::MassEv => &["eV/c^2"],
            _ => &[],
        }
    }

    pub fn from_symbol(symbol: &str) -> Option<Unit> {
        ALL_UNITS
            .iter()
            .copied()
            .find(|u| u.symbol() == symbol || u.aliases().contains(&symbol))
    }

    /// Multiplicative factor from this unit to the internal unit of its dimension.
    pub fn factor(self) -> f64 {
        use Unit::*;
        let sys = UnitSystem::standard();
        let fs = 1.0 / sys.time_unit_fs;
        let nm = 1.0 / sys.length_unit_nm;
        match self {
            MilliElectronVolt => 1e-3,
            ElectronVolt => 1.0,
            KiloElectronVolt => 1e3,
            Attosecond => 1e-3 * fs,
            Femtosecond => fs,
            Picosecond => 1e3 * fs,
            Nanosecond => 1e6 * fs,
            Second => 1e15 * fs,
            Picometre => 1e-3 * nm,
            Nanometre => nm,
            Micrometre => 1e3 * nm,
            Millimetre => 1e6 * nm,
            Metre => 1e9 * nm,
            MomentumEvFsPerNm => sys.length_unit_nm / sys.hbar_ev_fs,
            ActionEvFs => 1.0 / sys.hbar_ev_fs,
            NanometrePerFemtosecond => sys.time_unit_fs / sys.length_unit_nm,
            ElectronMass => 1.0,
            MassEv => 1.0 / sys.electron_mass_ev,
            Radian => 1.0,
            Milliradian => 1e-3,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Convert `value` between two units of the same dimension.
pub fn convert(value: f64, from: Unit, to: Unit) -> Result<f64> {
    if from.dimension() != to.dimension() {
        return Err(Error::Dimension {
            from: from.symbol().to_owned(),
            to: to.symbol().to_owned(),
        });
    }
    if from == to {
        return Ok(value);
    }
    Ok(value * from.factor() / to.factor())
}

/// Parse a value with an explicit unit suffix, e.g. `0.3eV`, `120 fs`, `1.5m`.
///
/// Bare numbers are rejected.
pub fn parse_quantity(text: &str) -> Result<(f64, Unit)> {
    let text = text.trim();
    let mut best: Option<(usize, f64, Unit)> = None;
    for unit in ALL_UNITS {
        let symbols = std::iter::once(unit.symbol()).chain(unit.aliases().iter().copied());
        for symbol in symbols {
            let Some(number) = text.strip_suffix(symbol) else {
                continue;
            };
            let Ok(value) = number.trim_end().parse::<f64>() else {
                continue;
            };
            if !matches!(best, Some((len, _, _)) if symbol.len() <= len) {
                best = Some((symbol.len(), value, unit));
            }
        }
    }
    match best {
        Some((_, value, _)) if !value.is_finite() => {
            Err(Error::UnitParse(format!("`{text}` is not finite")))
        }
        Some((_, value, unit)) => Ok((value, unit)),
        None if text.parse::<f64>().is_ok() => Err(Error::UnitParse(format!(
            "`{text}` has no unit suffix (write e.g. 0.3eV, 120fs, 1626nm)"
        ))),
        None => Err(Error::UnitParse(format!("cannot parse `{text}` as a quantity"))),
    }
}

macro_rules! quantity {
    ($(#[$meta:meta])* $name:ident, $dim:expr) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(f64);

        impl $name {
            pub const fn from_internal(value: f64) -> Self {
                $name(value)
            }

            /// The value in internal units.
            pub const fn internal(self) -> f64 {
                self.0
            }

            pub fn new(value: f64, unit: Unit) -> Result<Self> {
                if unit.dimension() != $dim {
                    return Err(Error::Dimension {
                        from: unit.symbol().to_owned(),
                        to: format!("{:?}", $dim),
                    });
                }
                Ok($name(value * unit.factor()))
            }

            pub fn value_in(self, unit: Unit) -> Result<f64> {
                if unit.dimension() != $dim {
                    return Err(Error::Dimension {
                        from: format!("{:?}", $dim),
                        to: unit.symbol().to_owned(),
                    });
                }
                Ok(self.0 / unit.factor())
            }

            /// Parse text with a unit suffix of the right dimension.
            pub fn parse(text: &str) -> Result<Self> {
                let (value, unit) = parse_quantity(text)?;
                Self::new(value, unit)
            }
        }

        impl std::ops::Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                $name(self.0 + rhs.0)
            }
        }

        impl std::ops::Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                $name(self.0 - rhs.0)
            }
        }

        impl std::ops::Mul<f64> for $name {
            type Output = $name;
            fn mul(self, rhs: f64) -> $name {
                $name(self.0 * rhs)
            }
        }

        impl std::ops::Div<f64> for $name {
            type Output = $name;
            fn div(self, rhs: f64) -> $name {
                $name(self.0 / rhs)
            }
        }
    };
}

quantity!(Energy, Dimension::Energy);
quantity!(Time, Dimension::Time);
quantity!(Length, Dimension::Length);
quantity!(
    /// Momentum; internal unit hbar per internal length.
    Momentum,
    Dimension::Momentum
);
quantity!(Velocity, Dimension::Velocity);

impl Energy {
    pub fn ev(value: f64) -> Self {
        Energy(value)
    }
    pub fn to_ev(self) -> f64 {
        self.0
    }
}

impl Time {
    pub fn fs(value: f64) -> Self {
        Time(value * Unit::Femtosecond.factor())
    }
    pub fn to_fs(self) -> f64 {
        self.0 / Unit::Femtosecond.factor()
    }
}

impl Length {
    pub fn nm(value: f64) -> Self {
        Length(value * Unit::Nanometre.factor())
    }
    pub fn to_nm(self) -> f64 {
        self.0 / Unit::Nanometre.factor()
    }
}

impl Velocity {
    pub fn to_nm_per_fs(self) -> f64 {
        self.0 / Unit::NanometrePerFemtosecond.factor()
    }
}

/// A free particle with a well defined central momentum.
///
/// The kinetic energy is always derived from the momentum, `E0 = p0²/2m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Particle {
    mass: f64,
    momentum: f64,
}

impl Particle {
    /// An electron with kinetic energy `energy`.
    pub fn electron(energy: Energy) -> Result<Self> {
        Self::with_energy(ELECTRON_MASS_EV, energy)
    }

    /// `mass_ev` is the rest energy m c² in eV.
    pub fn with_energy(mass_ev: f64, energy: Energy) -> Result<Self> {
        let mass = check_mass(mass_ev)?;
        let e = energy.internal();
        if !e.is_finite() || e < 0.0 {
            return Err(Error::config(format!("kinetic energy must be >= 0, got {e} eV")));
        }
        Ok(Particle {
            mass,
            momentum: (2.0 * mass * e).sqrt(),
        })
    }

    pub fn with_momentum(mass_ev: f64, momentum: Momentum) -> Result<Self> {
        let mass = check_mass(mass_ev)?;
        let p = momentum.internal();
        if !p.is_finite() || p < 0.0 {
            return Err(Error::config(format!("momentum must be >= 0, got {p}")));
        }
        Ok(Particle { mass, momentum: p })
    }

    /// Mass in electron masses (the internal mass unit).
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Rest energy m c² in eV.
    pub fn mass_ev(&self) -> f64 {
        self.mass * ELECTRON_MASS_EV
    }

    pub fn momentum(&self) -> Momentum {
        Momentum(self.momentum)
    }

    pub fn energy(&self) -> Energy {
        Energy(self.momentum * self.momentum / (2.0 * self.mass))
    }

    /// Velocity `p0 / m`; zero for a particle at rest.
    pub fn velocity(&self) -> Velocity {
        Velocity(self.momentum / self.mass)
    }
}

fn check_mass(mass_ev: f64) -> Result<f64> {
    if !mass_ev.is_finite() || mass_ev <= 0.0 {
        return Err(Error::config(format!("mass must be > 0, got {mass_ev} eV/c^2")));
    }
    Ok(mass_ev / ELECTRON_MASS_EV)
}

/// Velocity, de Broglie wavelength and arrival times of a moving particle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kinematics {
    pub velocity: Velocity,
    pub de_broglie: Length,
    mass: f64,
    momentum: f64,
}

impl Kinematics {
    /// Classical arrival time `m Z / p0` at distance `distance`.
    pub fn arrival_time(&self, distance: Length) -> Time {
        Time(self.mass * distance.internal() / self.momentum)
    }
}

pub fn derived_kinematics(particle: &Particle) -> Result<Kinematics> {
    let p = particle.momentum;
    if p == 0.0 {
        return Err(Error::ZeroMomentum("de Broglie wavelength"));
    }
    Ok(Kinematics {
        velocity: Velocity(p / particle.mass),
        de_broglie: Length(2.0 * PI / p),
        mass: particle.mass,
        momentum: p,
    })
}
