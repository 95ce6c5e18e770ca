//! Prints the connective tables of the four p-bits and the two Belnap orders.

use paralogic::pbit::{apply_binary, apply_unary, BinaryOp, PBit, UnaryOp};

fn main() {
    print!("{:>6}", "");
    for a in PBit::ALL {
        print!("{:>3}", a.to_string());
    }
    println!();
    for op in UnaryOp::ALL {
        print!("{:>6}", op.symbol());
        for a in PBit::ALL {
            print!("{:>3}", apply_unary(op, a).to_string());
        }
        println!();
    }

    for op in BinaryOp::ALL {
        println!("\n{} ({})", op.name(), op.symbol());
        print!("   ");
        for b in PBit::ALL {
            print!("{:>3}", b.to_string());
        }
        println!();
        for a in PBit::ALL {
            print!("{:>3}", a.to_string());
            for b in PBit::ALL {
                print!("{:>3}", apply_binary(op, a, b).to_string());
            }
            println!();
        }
    }

    println!("\nknowledge order: N < T, F < B");
    println!("truth order:     F < N, B < T");
    for a in PBit::ALL {
        let kc = a.to_kc();
        println!(
            "{a} = ({},{})  kc=({},{})  designated={}",
            a.pos() as u8,
            a.neg() as u8,
            kc.x,
            kc.y,
            a.is_designated()
        );
    }
}
