fn main() { println!("{}", ffmds_core::placeholder()); }
