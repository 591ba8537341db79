//! A classical protocol for the randomized task with two bits from Alice and
//! one from Bob (channel allocation C1), checked on every promise input.

use ghzlab::commcomp::{eval_task_function, task_inputs, ChannelConfig, TaskId, TaskInput};
use ghzlab::games::winning_bit;

/// Returns Alice's two message bits, Bob's bit and Charlie's output.
fn run(i: &TaskInput) -> ([bool; 2], bool, bool) {
    let r2 = i.r2.unwrap();
    // Alice's third view bit is r1 when r2 = 0 and 0 otherwise.
    let alice_r1 = i.r1.unwrap() & !r2;
    let [x0, x1] = i.x;
    // Message m_{z0}: x1 xor the part of Ω that Charlie cannot learn from Bob.
    let g = |z0: bool| {
        if r2 {
            x0 & z0
        } else {
            let y0 = x0 ^ z0 ^ alice_r1;
            winning_bit(x0, y0, z0, alice_r1)
        }
    };
    let alice = [x1 ^ g(false), x1 ^ g(true)];

    let bob_r1 = i.r1.unwrap() & r2;
    let [y0, y1] = i.y;
    let bob = if r2 { y1 ^ (y0 & !bob_r1) } else { y1 };

    let [z0, z1] = i.z;
    let output = bob ^ z1 ^ alice[z0 as usize];
    (alice, bob, output)
}

#[test]
fn c1_allocation_suffices_for_the_randomized_task() {
    let inputs = task_inputs(TaskId::R2Cc2);
    assert_eq!(inputs.len(), 128);
    // Two bits from Alice, one from Bob.
    assert_eq!(
        (ChannelConfig::C1.alice_bits, ChannelConfig::C1.bob_bits),
        (2, 1)
    );
    for i in &inputs {
        let (_alice, _bob, output) = run(i);
        assert_eq!(output, eval_task_function(TaskId::R2Cc2, i).unwrap(), "{i}");
    }
}
