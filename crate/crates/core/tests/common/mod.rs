#![allow(dead_code)]

pub mod bigon;
pub mod nielsen;
