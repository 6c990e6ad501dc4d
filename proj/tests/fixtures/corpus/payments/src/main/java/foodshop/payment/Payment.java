package foodshop.payment;

import java.util.UUID;
import javax.persistence.Entity;

@Entity
public class Payment {
    private UUID id;
    private String orderId;
    private double amount;
}
