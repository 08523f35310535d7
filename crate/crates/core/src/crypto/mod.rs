//! The Sidon cryptosystem: keys, the message codec, encryption and decryption.

mod codec;
mod keys;
mod scheme;

pub use codec::{canonicalize, msg_space_size, MessageClass, MessageSpace};
pub use keys::{
    coefficient_matrices, keygen, keygen_with_randomizer, Ciphertext, PrivateKey, PrivateKeyDoc,
    PublicKey, PublicKeyDoc,
};
pub use scheme::{
    decrypt, encrypt, encrypt_pair, randomized_decrypt, randomized_encrypt, randomized_encrypt_with,
};
