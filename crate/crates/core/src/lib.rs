//! Core library for fpelab: a desk-scale testbed for studying whether
//! full-packet-encryption VPN traffic can be told apart from random noise and
//! from ordinary network traffic by packet-level classifiers.
//!
//! The library is organized around the stages of that experiment:
//!
//! - [`codec`] — the three-step packet encapsulation (structured document,
//!   delimited random padding, AES-256-GCM-SIV) and its inverse.
//! - [`pipeline`] — capture-file ingestion, filtering, header stripping,
//!   downsampling, and synthetic/random corpus generation.
//! - [`dataset`] — fixed-width labeled vectors, stratified splits, and the
//!   bit-exact on-disk container.
//! - [`classifier`] — from-scratch classical classifiers behind a single
//!   train/predict contract.
//! - [`metrics`] — confusion accounting, the evaluation metrics, the efficacy
//!   predicate, and the popcount baseline detector.
//!
//! Every operation that consumes randomness takes its generator as an
//! argument, so a run is fully determined by its seeds; [`seed`] provides the
//! per-stage fan-out used by the experiment driver.

pub mod classifier;
pub mod codec;
pub mod dataset;
pub mod metrics;
pub mod pipeline;
pub mod seed;
